use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Maximum-cardinality matching in a bipartite graph (Hopcroft-Karp).
///
/// `adj[i]` lists the right vertices adjacent to left vertex `i`; right
/// vertices are `0..right`. Returns the matching size.
pub(crate) fn max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    let left = adj.len();
    let mut match_l = vec![FREE; left];
    let mut match_r = vec![FREE; right];
    let mut layer = vec![0usize; left];
    let mut size = 0;

    loop {
        // BFS from free left vertices builds the layered graph.
        let mut queue = VecDeque::new();
        for i in 0..left {
            if match_l[i] == FREE {
                layer[i] = 0;
                queue.push_back(i);
            } else {
                layer[i] = FREE;
            }
        }
        let mut found_free = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                let k = match_r[j];
                if k == FREE {
                    found_free = true;
                } else if layer[k] == FREE {
                    layer[k] = layer[i] + 1;
                    queue.push_back(k);
                }
            }
        }
        if !found_free {
            return size;
        }
        for i in 0..left {
            if match_l[i] == FREE && augment(i, adj, &mut match_l, &mut match_r, &mut layer) {
                size += 1;
            }
        }
    }
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    layer: &mut [usize],
) -> bool {
    for &j in &adj[i] {
        let k = match_r[j];
        let ok = k == FREE
            || (layer[k] == layer[i].wrapping_add(1) && augment(k, adj, match_l, match_r, layer));
        if ok {
            match_l[i] = j;
            match_r[j] = i;
            return true;
        }
    }
    layer[i] = FREE;
    false
}
