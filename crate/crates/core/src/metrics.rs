//! Hausdorff distance on finite clouds and on axis boxes, the bottleneck
//! distance between equal-size multisets, and the correspondence form of
//! the Hausdorff distance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{check_dims, dist_unchecked, AxisBox, Interval, NormTag, PointCloud};
use crate::matching::max_matching;

/// Largest `N` accepted by [`nnet_dist_bruteforce`]; `8! = 40320` permutations.
pub const BRUTEFORCE_MAX_N: usize = 8;

/// `sup_{x in M} |xW|`.
pub fn directed_hausdorff(m: &PointCloud, w: &PointCloud, norm: NormTag) -> Result<f64> {
    check_dims(m.dim(), w.dim())?;
    Ok(directed_unchecked(m, w, norm))
}

fn directed_unchecked(m: &PointCloud, w: &PointCloud, norm: NormTag) -> f64 {
    m.iter()
        .map(|x| {
            w.iter()
                .map(|y| dist_unchecked(x.coords(), y.coords(), norm))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

pub fn hausdorff(m: &PointCloud, w: &PointCloud, norm: NormTag) -> Result<f64> {
    check_dims(m.dim(), w.dim())?;
    Ok(directed_unchecked(m, w, norm).max(directed_unchecked(w, m, norm)))
}

fn interval_directed(a: &Interval, b: &Interval) -> f64 {
    // The farthest point of a convex interval from another is an endpoint.
    b.clamp_dist(a.lo).max(b.clamp_dist(a.hi))
}

/// Directed Hausdorff distance from box `a` to box `b` under the max norm.
pub fn box_directed_hausdorff_linf(a: &AxisBox, b: &AxisBox) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    Ok(a.intervals()
        .iter()
        .zip(b.intervals())
        .map(|(ia, ib)| interval_directed(ia, ib))
        .fold(0.0, f64::max))
}

/// Hausdorff distance between axis boxes under the max norm.
///
/// The max norm splits across coordinates, so the distance is the largest
/// per-coordinate interval distance `max(|lo_a - lo_b|, |hi_a - hi_b|)`.
pub fn box_hausdorff_linf(a: &AxisBox, b: &AxisBox) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    Ok(a.intervals()
        .iter()
        .zip(b.intervals())
        .map(|(ia, ib)| (ia.lo - ib.lo).abs().max((ia.hi - ib.hi).abs()))
        .fold(0.0, f64::max))
}

fn check_equal_size(m: &PointCloud, w: &PointCloud) -> Result<()> {
    check_dims(m.dim(), w.dim())?;
    if m.len() != w.len() {
        return Err(Error::SizeMismatch {
            left: m.len(),
            right: w.len(),
        });
    }
    Ok(())
}

fn pairwise(m: &PointCloud, w: &PointCloud, norm: NormTag) -> Vec<Vec<f64>> {
    m.iter()
        .map(|x| {
            w.iter()
                .map(|y| dist_unchecked(x.coords(), y.coords(), norm))
                .collect()
        })
        .collect()
}

/// Bottleneck distance: the least over bijections `M -> W` of the largest
/// matched distance.
///
/// The optimum is one of the `N^2` pairwise distances. Those are sorted and
/// binary-searched for the smallest threshold whose "distance <= threshold"
/// graph has a perfect matching.
pub fn nnet_dist(m: &PointCloud, w: &PointCloud, norm: NormTag) -> Result<f64> {
    check_equal_size(m, w)?;
    let d = pairwise(m, w, norm);
    let n = m.len();
    let mut candidates: Vec<f64> = d.iter().flatten().copied().collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let feasible = |threshold: f64| {
        let adj: Vec<Vec<usize>> = d
            .iter()
            .map(|row| (0..n).filter(|&j| row[j] <= threshold).collect())
            .collect();
        max_matching(&adj, n) == n
    };

    // The largest candidate admits the complete graph, so `hi` is feasible.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo])
}

/// Bottleneck distance by enumerating every permutation (Heap's algorithm).
/// Refuses `N > 8`.
pub fn nnet_dist_bruteforce(m: &PointCloud, w: &PointCloud, norm: NormTag) -> Result<f64> {
    check_equal_size(m, w)?;
    let n = m.len();
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::OracleLimit {
            n,
            limit: BRUTEFORCE_MAX_N,
        });
    }
    let d = pairwise(m, w, norm);
    let cost = |perm: &[usize]| {
        perm.iter()
            .enumerate()
            .map(|(i, &j)| d[i][j])
            .fold(0.0, f64::max)
    };

    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = cost(&perm);
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(cost(&perm));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

/// A relation between the indices of two clouds whose projections onto
/// both sides are full.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correspondence {
    pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    /// Validates that every index of `0..left` and `0..right` is covered.
    pub fn new(pairs: Vec<(usize, usize)>, left: usize, right: usize) -> Result<Self> {
        let mut seen_l = vec![false; left];
        let mut seen_r = vec![false; right];
        for &(i, j) in &pairs {
            if i >= left || j >= right {
                return Err(Error::InvalidConfig(format!(
                    "pair ({i}, {j}) out of range {left}x{right}"
                )));
            }
            seen_l[i] = true;
            seen_r[j] = true;
        }
        if seen_l.iter().chain(&seen_r).any(|s| !s) {
            return Err(Error::InvalidConfig(
                "correspondence does not cover both clouds".into(),
            ));
        }
        Ok(Correspondence { pairs })
    }

    /// Pairs each point with a nearest point of the other cloud, in both
    /// directions. Ties go to the lowest index.
    pub fn nearest_neighbor(m: &PointCloud, w: &PointCloud, norm: NormTag) -> Result<Self> {
        check_dims(m.dim(), w.dim())?;
        let nearest = |x: &[f64], other: &PointCloud| {
            let mut best = (0usize, f64::INFINITY);
            for (k, y) in other.iter().enumerate() {
                let d = dist_unchecked(x, y.coords(), norm);
                if d < best.1 {
                    best = (k, d);
                }
            }
            best.0
        };
        let mut pairs: Vec<(usize, usize)> = m
            .iter()
            .enumerate()
            .map(|(i, x)| (i, nearest(x.coords(), w)))
            .collect();
        pairs.extend(
            w.iter()
                .enumerate()
                .map(|(j, y)| (nearest(y.coords(), m), j)),
        );
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Correspondence { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Largest paired distance.
    pub fn cost(&self, m: &PointCloud, w: &PointCloud, norm: NormTag) -> Result<f64> {
        check_dims(m.dim(), w.dim())?;
        Ok(self
            .pairs
            .iter()
            .map(|&(i, j)| dist_unchecked(m.points()[i].coords(), w.points()[j].coords(), norm))
            .fold(0.0, f64::max))
    }
}

/// Least cost over all full correspondences, attained by the
/// nearest-neighbor correspondence. Equals [`hausdorff`].
pub fn hausdorff_via_correspondence(m: &PointCloud, w: &PointCloud, norm: NormTag) -> Result<f64> {
    Correspondence::nearest_neighbor(m, w, norm)?.cost(m, w, norm)
}
