//! Closed forms and exact algorithms checked against brute-force oracles
//! that share no code with them: grid sampling, exhaustive enumeration and
//! hand-solved linear systems.

use lipcheb_core::verify::{gen_cloud, trial_rng};
use lipcheb_core::{
    box_dist_linf, box_hausdorff_linf, cheb_l2, cheb_linf, cheb_numeric_oracle, farthest_dist,
    hausdorff, hausdorff_via_correspondence, midpoint, nnet_dist, nnet_dist_bruteforce, AxisBox,
    NormTag, PointCloud, Vector,
};
use rand::RngExt;

fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Grid points of a box with at most `pitch` spacing, endpoints included.
fn grid(b: &[(f64, f64)], pitch: f64) -> Vec<Vec<f64>> {
    let mut pts = vec![vec![]];
    for &(lo, hi) in b {
        let steps = ((hi - lo) / pitch).ceil().max(1.0) as usize;
        let axis: Vec<f64> = (0..=steps)
            .map(|k| lo + (hi - lo) * k as f64 / steps as f64)
            .collect();
        pts = pts
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts
}

fn sampled_hausdorff(a: &[(f64, f64)], b: &[(f64, f64)], pitch: f64) -> f64 {
    let (ga, gb) = (grid(a, pitch), grid(b, pitch));
    let directed = |from: &[Vec<f64>], to: &[Vec<f64>]| {
        from.iter()
            .map(|p| to.iter().map(|q| linf(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(&ga, &gb).max(directed(&gb, &ga))
}

#[test]
fn box_hausdorff_matches_grid_sampling_examples() {
    let pitch = 1.0 / 64.0;
    let a = [(0.0, 1.0), (0.0, 1.0)];
    let b = [(2.0, 3.0), (0.0, 1.0)];
    let sampled = sampled_hausdorff(&a, &b, pitch);
    assert!((sampled - 2.0).abs() <= pitch, "sampled {sampled}");
    let closed = box_hausdorff_linf(
        &AxisBox::from_bounds(&a).unwrap(),
        &AxisBox::from_bounds(&b).unwrap(),
    )
    .unwrap();
    assert_eq!(closed, 2.0);

    let a = [(0.0, 2.0), (0.0, 0.0)];
    let b = [(0.0, 2.0), (1.0, 1.0)];
    let sampled = sampled_hausdorff(&a, &b, pitch);
    assert!((sampled - 1.0).abs() <= pitch, "sampled {sampled}");
    let closed = box_hausdorff_linf(
        &AxisBox::from_bounds(&a).unwrap(),
        &AxisBox::from_bounds(&b).unwrap(),
    )
    .unwrap();
    assert_eq!(closed, 1.0);
}

#[test]
fn box_hausdorff_matches_grid_sampling_random() {
    let mut rng = trial_rng(11, 0);
    for pitch in [0.25, 0.1, 0.05] {
        for _ in 0..40 {
            let dim = rng.random_range(1..=2);
            let mut rand_box = || -> Vec<(f64, f64)> {
                (0..dim)
                    .map(|_| {
                        let lo: f64 = rng.random_range(-2.0..2.0);
                        let w: f64 = if rng.random_bool(0.25) {
                            0.0
                        } else {
                            rng.random_range(0.0..2.0)
                        };
                        (lo, lo + w)
                    })
                    .collect()
            };
            let (a, b) = (rand_box(), rand_box());
            let closed = box_hausdorff_linf(
                &AxisBox::from_bounds(&a).unwrap(),
                &AxisBox::from_bounds(&b).unwrap(),
            )
            .unwrap();
            let sampled = sampled_hausdorff(&a, &b, pitch);
            assert!(
                (closed - sampled).abs() <= pitch + 1e-12,
                "{a:?} {b:?}: closed {closed} sampled {sampled}"
            );
        }
    }
}

/// Minimizes the max-norm farthest distance over a grid of candidate centers.
fn grid_center_oracle(m: &PointCloud, region: &[(f64, f64)], pitch: f64) -> (f64, Vec<Vec<f64>>) {
    let candidates = grid(region, pitch);
    let values: Vec<f64> = candidates
        .iter()
        .map(|c| m.iter().map(|p| linf(p.coords(), c)).fold(0.0, f64::max))
        .collect();
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let argmins = candidates
        .into_iter()
        .zip(&values)
        .filter(|(_, &v)| v <= best + 1e-12)
        .map(|(c, _)| c)
        .collect();
    (best, argmins)
}

#[test]
fn linf_center_examples_match_grid_oracle() {
    // Pitch 1/4 contains every endpoint of the expected boxes.
    let region = [(-3.0, 3.0), (-3.0, 3.0)];
    type Case<'a> = (&'a [[f64; 2]], f64, [(f64, f64); 2]);
    let cases: [Case; 2] = [
        (&[[0.0, 0.0], [0.0, 2.0]], 1.0, [(-1.0, 1.0), (1.0, 1.0)]),
        (&[[0.0, 0.0], [1.0, 3.0]], 1.5, [(-0.5, 1.5), (1.5, 1.5)]),
    ];
    for (rows, radius, bounds) in cases {
        let m = PointCloud::from_rows(rows).unwrap();
        let (best, argmins) = grid_center_oracle(&m, &region, 0.25);
        assert_eq!(best, radius);
        let lo: Vec<f64> = (0..2)
            .map(|j| argmins.iter().map(|c| c[j]).fold(f64::INFINITY, f64::min))
            .collect();
        let hi: Vec<f64> = (0..2)
            .map(|j| {
                argmins
                    .iter()
                    .map(|c| c[j])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        assert_eq!([(lo[0], hi[0]), (lo[1], hi[1])], bounds);

        let r = cheb_linf(&m);
        assert_eq!(r.radius, best);
        let got: Vec<(f64, f64)> = r
            .center_set
            .intervals()
            .iter()
            .map(|i| (i.lo, i.hi))
            .collect();
        assert_eq!(got, bounds);
    }
}

#[test]
fn linf_center_set_is_exactly_the_sublevel_set() {
    let mut rng = trial_rng(5, 0);
    for trial in 0..50 {
        let dim = rng.random_range(2..=4);
        let n = rng.random_range(1..=12);
        let m = gen_cloud(&mut rng, dim, n, (-10.0, 10.0)).unwrap();
        let r = cheb_linf(&m);
        for _ in 0..100 {
            let inside = Vector::new(
                r.center_set
                    .intervals()
                    .iter()
                    .map(|iv| rng.random_range(iv.lo..=iv.hi))
                    .collect(),
            )
            .unwrap();
            let f = farthest_dist(&m, &inside, NormTag::Linf).unwrap();
            assert!((f - r.radius).abs() <= 1e-9, "trial {trial}");

            let mut outside = inside.coords().to_vec();
            let j = rng.random_range(0..dim);
            let delta: f64 = rng.random_range(0.01..3.0);
            let iv = r.center_set.intervals()[j];
            outside[j] = if rng.random_bool(0.5) {
                iv.hi + delta
            } else {
                iv.lo - delta
            };
            let outside = Vector::new(outside).unwrap();
            let d = box_dist_linf(&outside, &r.center_set).unwrap();
            assert!(d > 0.0);
            let f = farthest_dist(&m, &outside, NormTag::Linf).unwrap();
            assert!(
                f >= r.radius + d - 1e-9,
                "trial {trial}: {f} < {} + {d}",
                r.radius
            );
        }
    }
}

#[test]
fn linf_numeric_oracle_from_the_box_midpoint_lands_in_the_box() {
    let m = PointCloud::from_rows(&[[0.0, 0.0], [0.0, 2.0]]).unwrap();
    let (obj, arg) = cheb_numeric_oracle(&m, NormTag::Linf);
    assert!((obj - 1.0).abs() <= 1e-6);
    assert!(box_dist_linf(&arg, &cheb_linf(&m).center_set).unwrap() <= 1e-5);
}

#[test]
fn equilateral_triangle_circumcenter() {
    // Circumcenter from the perpendicular-bisector equations
    //   2 (b - a) . c = |b|^2 - |a|^2,  2 (d - a) . c = |d|^2 - |a|^2
    // solved by Cramer's rule.
    let s3 = 3f64.sqrt();
    let (a, b, d) = ([0.0, 0.0], [2.0, 0.0], [1.0, s3]);
    let sq = |p: [f64; 2]| p[0] * p[0] + p[1] * p[1];
    let (a11, a12, r1) = (2.0 * (b[0] - a[0]), 2.0 * (b[1] - a[1]), sq(b) - sq(a));
    let (a21, a22, r2) = (2.0 * (d[0] - a[0]), 2.0 * (d[1] - a[1]), sq(d) - sq(a));
    let det = a11 * a22 - a12 * a21;
    let c = [(r1 * a22 - a12 * r2) / det, (a11 * r2 - r1 * a21) / det];
    let radius = (sq([c[0] - a[0], c[1] - a[1]])).sqrt();
    assert!((c[0] - 1.0).abs() < 1e-12 && (c[1] - s3 / 3.0).abs() < 1e-12);
    assert!((radius - 2.0 / s3).abs() < 1e-12);

    let m = PointCloud::from_rows(&[a, b, d]).unwrap();
    let ball = cheb_l2(&m);
    assert!((ball.center[0] - c[0]).abs() < 1e-12);
    assert!((ball.center[1] - c[1]).abs() < 1e-12);
    assert!((ball.radius - radius).abs() < 1e-12);
    let (obj, _) = cheb_numeric_oracle(&m, NormTag::L2);
    assert!((obj - radius).abs() < 1e-9);
}

#[test]
fn obtuse_triangle_uses_longest_edge() {
    let m = PointCloud::from_rows(&[[0.0, 0.0], [4.0, 0.0], [1.0, 1.0]]).unwrap();
    // (1,1) is inside the diametral ball of the long edge: sqrt(2) < 2.
    assert!(2f64.sqrt() < 2.0);
    let ball = cheb_l2(&m);
    assert!((ball.radius - 2.0).abs() < 1e-12);
    assert!((ball.center[0] - 2.0).abs() < 1e-12 && ball.center[1].abs() < 1e-12);
    assert_eq!(ball.support.len(), 2);
}

#[test]
fn l2_center_is_a_convex_combination_of_its_support() {
    let mut rng = trial_rng(9, 0);
    for _ in 0..200 {
        let dim = rng.random_range(1..=6);
        let n = rng.random_range(1..=30);
        let m = gen_cloud(&mut rng, dim, n, (-5.0, 5.0)).unwrap();
        let ball = cheb_l2(&m);
        assert!(ball.support.len() <= dim + 1);
        let sum: f64 = ball.weights.iter().sum();
        assert!((sum - 1.0).abs() < 1e-9);
        assert!(
            ball.weights.iter().all(|&w| w >= -1e-9),
            "{:?}",
            ball.weights
        );
        let mut recon = vec![0.0; dim];
        for (&i, &w) in ball.support.iter().zip(&ball.weights) {
            for (r, x) in recon.iter_mut().zip(m.points()[i].coords()) {
                *r += w * x;
            }
        }
        assert!(linf(&recon, ball.center.coords()) < 1e-9);
    }
}

#[test]
fn l2_center_of_two_points_is_the_midpoint() {
    let mut rng = trial_rng(13, 0);
    for _ in 0..500 {
        let dim = rng.random_range(1..=8);
        let m = gen_cloud(&mut rng, dim, 2, (-10.0, 10.0)).unwrap();
        let mid = midpoint(&m.points()[0], &m.points()[1]).unwrap();
        let ball = cheb_l2(&m);
        assert!(linf(ball.center.coords(), mid.coords()) <= 1e-12);
    }
}

/// Smallest cost over every relation covering both index sets.
fn enumerate_correspondences(m: &PointCloud, w: &PointCloud, norm: NormTag) -> (f64, usize) {
    let (a, b) = (m.len(), w.len());
    let edges = a * b;
    assert!(edges <= 16);
    let d = |i: usize, j: usize| lipcheb_core::dist(&m.points()[i], &w.points()[j], norm).unwrap();
    let mut best = f64::INFINITY;
    let mut count = 0;
    for mask in 1u32..(1 << edges) {
        let mut left = vec![false; a];
        let mut right = vec![false; b];
        let mut cost = 0.0_f64;
        for e in 0..edges {
            if mask >> e & 1 == 1 {
                let (i, j) = (e / b, e % b);
                left[i] = true;
                right[j] = true;
                cost = cost.max(d(i, j));
            }
        }
        if left.iter().chain(&right).all(|&x| x) {
            count += 1;
            best = best.min(cost);
        }
    }
    (best, count)
}

#[test]
fn correspondence_example_by_enumeration() {
    let m = PointCloud::from_rows(&[[0.0], [1.0]]).unwrap();
    let w = PointCloud::from_rows(&[[0.5], [1.5]]).unwrap();
    let (best, count) = enumerate_correspondences(&m, &w, NormTag::Linf);
    assert_eq!(count, 7);
    assert_eq!(best, 0.5);
    assert_eq!(
        hausdorff_via_correspondence(&m, &w, NormTag::Linf).unwrap(),
        0.5
    );

    let m = PointCloud::from_rows(&[[0.0], [10.0]]).unwrap();
    let w = PointCloud::from_rows(&[[0.0]]).unwrap();
    assert_eq!(enumerate_correspondences(&m, &w, NormTag::Linf), (10.0, 1));
}

#[test]
fn nearest_neighbor_correspondence_is_optimal() {
    let mut rng = trial_rng(17, 0);
    for _ in 0..300 {
        let dim = rng.random_range(1..=3);
        let a = rng.random_range(1..=4);
        let b = rng.random_range(1..=(16 / a).min(4));
        let norm = if rng.random_bool(0.5) {
            NormTag::Linf
        } else {
            NormTag::L2
        };
        let m = gen_cloud(&mut rng, dim, a, (-3.0, 3.0)).unwrap();
        let w = gen_cloud(&mut rng, dim, b, (-3.0, 3.0)).unwrap();
        let (best, _) = enumerate_correspondences(&m, &w, norm);
        assert_eq!(hausdorff_via_correspondence(&m, &w, norm).unwrap(), best);
        assert_eq!(hausdorff(&m, &w, norm).unwrap(), best);
    }
}

#[test]
fn bottleneck_examples_by_enumeration() {
    let m = PointCloud::from_rows(&[[0.0, 0.0], [10.0, 0.0]]).unwrap();
    let w = PointCloud::from_rows(&[[0.0, 1.0], [10.0, -1.0]]).unwrap();
    // Identity pairing costs max(1, 1) = 1; the swap costs max(10, 10) = 10.
    assert_eq!(nnet_dist_bruteforce(&m, &w, NormTag::Linf).unwrap(), 1.0);
    assert_eq!(nnet_dist(&m, &w, NormTag::Linf).unwrap(), 1.0);
}
