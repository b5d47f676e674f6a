//! Chebyshev radius and center set of a finite cloud.
//!
//! Under the max norm the center set is the axis box
//! `prod_j [max_j - R, min_j + R]` with `R = max_j (max_j - min_j) / 2`.
//! Under the Euclidean norm the center is unique: the center of the minimum
//! enclosing ball, computed exactly by move-to-front support recursion.
//! [`cheb_numeric_oracle`] reaches the same radius by iteration, sharing no
//! code with either exact path.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{
    check_dims, dist_unchecked, AxisBox, BallSpec, Interval, NormTag, PointCloud, Vector,
};

/// Seed used by [`cheb_l2`] for the support-recursion shuffle.
pub const DEFAULT_BALL_SEED: u64 = 0x5eed_ba11;

/// Radius and full center set under the max norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebResultBox {
    pub radius: f64,
    pub center_set: AxisBox,
}

/// Radius and (unique) center under the Euclidean norm.
///
/// `support` indexes the cloud points that pin the ball; `weights` are the
/// barycentric coordinates of `center` with respect to them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebResultBall {
    pub radius: f64,
    pub center: Vector,
    pub support: Vec<usize>,
    pub weights: Vec<f64>,
}

impl ChebResultBall {
    pub fn ball(&self) -> BallSpec {
        BallSpec {
            center: self.center.clone(),
            radius: self.radius,
            norm: NormTag::L2,
        }
    }
}

pub fn cheb_linf(m: &PointCloud) -> ChebResultBox {
    let extents = m.coordinate_extents();
    let radius = extents
        .iter()
        .map(|&(lo, hi)| 0.5 * (hi - lo))
        .fold(0.0, f64::max);
    let intervals = extents
        .iter()
        .map(|&(min, max)| {
            let (lo, hi) = (max - radius, min + radius);
            if lo <= hi {
                Interval { lo, hi }
            } else {
                // Binding coordinate: rounding can invert a zero-width interval.
                let mid = 0.5 * (min + max);
                Interval { lo: mid, hi: mid }
            }
        })
        .collect();
    ChebResultBox {
        radius,
        center_set: AxisBox::new(intervals).expect("extents of a valid cloud are finite"),
    }
}

pub fn cheb_radius_linf(m: &PointCloud) -> f64 {
    m.coordinate_extents()
        .iter()
        .map(|&(lo, hi)| 0.5 * (hi - lo))
        .fold(0.0, f64::max)
}

/// Minimum enclosing Euclidean ball with the default shuffle seed.
pub fn cheb_l2(m: &PointCloud) -> ChebResultBall {
    cheb_l2_seeded(m, DEFAULT_BALL_SEED)
}

/// Minimum enclosing Euclidean ball; `seed` fixes the processing order.
pub fn cheb_l2_seeded(m: &PointCloud, seed: u64) -> ChebResultBall {
    let pts: Vec<&[f64]> = m.iter().map(Vector::coords).collect();
    let dim = m.dim();
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let extent = m
        .coordinate_extents()
        .iter()
        .map(|&(lo, hi)| hi - lo)
        .fold(0.0, f64::max);
    let solver = BallSolver {
        pts: &pts,
        dim,
        slack: 1e-13 * extent * extent,
    };
    let mut support = Vec::with_capacity(dim + 1);
    let ball = solver.move_to_front(&mut order, pts.len(), &mut support);

    // Report the radius actually needed to cover every point.
    let r2 = pts
        .iter()
        .map(|p| sq_dist(p, &ball.center))
        .fold(0.0, f64::max);
    ChebResultBall {
        radius: r2.sqrt(),
        center: Vector::new(ball.center).expect("ball center is finite"),
        support: ball.support,
        weights: ball.weights,
    }
}

struct Ball {
    center: Vec<f64>,
    r2: f64,
    support: Vec<usize>,
    weights: Vec<f64>,
}

struct BallSolver<'a> {
    pts: &'a [&'a [f64]],
    dim: usize,
    slack: f64,
}

impl BallSolver<'_> {
    fn contains(&self, ball: &Ball, p: &[f64]) -> bool {
        ball.r2 >= 0.0 && sq_dist(p, &ball.center) <= ball.r2 + self.slack
    }

    fn move_to_front(&self, order: &mut Vec<usize>, end: usize, support: &mut Vec<usize>) -> Ball {
        let mut ball = self
            .circumball(support)
            .expect("support sets are kept affinely independent");
        if support.len() == self.dim + 1 {
            return ball;
        }
        for i in 0..end {
            let idx = order[i];
            if self.contains(&ball, self.pts[idx]) {
                continue;
            }
            support.push(idx);
            if self.circumball(support).is_none() {
                // Numerically dependent on the current support: it already
                // lies on that sphere up to rounding.
                support.pop();
                continue;
            }
            ball = self.move_to_front(order, i, support);
            support.pop();
            order.remove(i);
            order.insert(0, idx);
        }
        ball
    }

    /// Smallest ball with every support point on its boundary, centered in
    /// their affine hull. `None` when the support is affinely dependent.
    fn circumball(&self, support: &[usize]) -> Option<Ball> {
        let Some(&first) = support.first() else {
            return Some(Ball {
                center: vec![0.0; self.dim],
                r2: -1.0,
                support: vec![],
                weights: vec![],
            });
        };
        let p0 = self.pts[first];
        let rel: Vec<Vec<f64>> = support[1..]
            .iter()
            .map(|&i| self.pts[i].iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect();
        let k = rel.len();
        let mut gram = vec![vec![0.0; k + 1]; k];
        for a in 0..k {
            for b in 0..k {
                gram[a][b] = 2.0 * dot(&rel[a], &rel[b]);
            }
            gram[a][k] = dot(&rel[a], &rel[a]);
        }
        let lambda = solve_augmented(gram)?;
        let mut center = p0.to_vec();
        for (l, q) in lambda.iter().zip(&rel) {
            for (c, x) in center.iter_mut().zip(q) {
                *c += l * x;
            }
        }
        let r2 = support
            .iter()
            .map(|&i| sq_dist(self.pts[i], &center))
            .fold(0.0, f64::max);
        let mut weights = Vec::with_capacity(k + 1);
        weights.push(1.0 - lambda.iter().sum::<f64>());
        weights.extend_from_slice(&lambda);
        Some(Ball {
            center,
            r2,
            support: support.to_vec(),
            weights,
        })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Gaussian elimination with partial pivoting on an `n x (n+1)` augmented
/// matrix. Returns `None` for (numerically) singular systems.
fn solve_augmented(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let n = a.len();
    let scale = a
        .iter()
        .flat_map(|row| row[..n].iter())
        .fold(0.0_f64, |m, x| m.max(x.abs()));
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(col, pivot);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            let f = row[col] / pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|c| a[row][c] * x[c]).sum();
        x[row] = (a[row][n] - s) / a[row][row];
    }
    Some(x)
}

/// Minimizes `farthest_dist(M, ., norm)` iteratively, starting from the
/// midpoint of the bounding box. Returns `(objective, argmin)`.
///
/// Max norm: the objective is the maximum of independent per-coordinate
/// terms `g_j(t) = max_i |p_ij - t|`, so each coordinate is descended by
/// golden-section search. Sweeps repeat until the objective moves by less
/// than `1e-10`.
///
/// Euclidean norm: farthest-point iteration with away steps on the simplex
/// of point weights. The step toward the farthest point is a subgradient
/// step of the squared objective. Stops once the primal value and the
/// weight-space lower bound agree to relative `1e-14`.
pub fn cheb_numeric_oracle(m: &PointCloud, norm: NormTag) -> (f64, Vector) {
    let start: Vec<f64> = m
        .coordinate_extents()
        .iter()
        .map(|&(lo, hi)| 0.5 * (lo + hi))
        .collect();
    let argmin = match norm {
        NormTag::Linf => coordinate_descent_linf(m, start),
        NormTag::L2 => farthest_point_iteration(m, &start),
    };
    let objective = m
        .iter()
        .map(|p| dist_unchecked(p.coords(), &argmin, norm))
        .fold(0.0, f64::max);
    (
        objective,
        Vector::new(argmin).expect("oracle iterate stays finite"),
    )
}

fn coordinate_descent_linf(m: &PointCloud, mut c: Vec<f64>) -> Vec<f64> {
    let objective = |c: &[f64]| {
        m.iter()
            .map(|p| dist_unchecked(p.coords(), c, NormTag::Linf))
            .fold(0.0, f64::max)
    };
    let extents = m.coordinate_extents();
    let mut value = objective(&c);
    for _sweep in 0..100 {
        for (j, &(lo, hi)) in extents.iter().enumerate() {
            let g = |t: f64| m.iter().map(|p| (p[j] - t).abs()).fold(0.0, f64::max);
            let width = (hi - lo).max(1.0);
            c[j] = golden_section(g, lo - width, hi + width);
        }
        let next = objective(&c);
        let done = (value - next).abs() < 1e-10;
        value = next;
        if done {
            break;
        }
    }
    c
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let tol = 1e-14 * (1.0 + a.abs().max(b.abs()));
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..400 {
        if b - a <= tol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

fn farthest_point_iteration(m: &PointCloud, start: &[f64]) -> Vec<f64> {
    let pts: Vec<&[f64]> = m.iter().map(Vector::coords).collect();
    let n = pts.len();
    let farthest_from = |c: &[f64]| {
        (0..n)
            .max_by(|&i, &j| sq_dist(pts[i], c).total_cmp(&sq_dist(pts[j], c)))
            .expect("cloud is nonempty")
    };
    let a = farthest_from(start);
    let b = farthest_from(pts[a]);
    let mut weights = vec![0.0; n];
    weights[a] += 0.5;
    weights[b] += 0.5;
    let mut c: Vec<f64> = pts[a]
        .iter()
        .zip(pts[b])
        .map(|(x, y)| 0.5 * (x + y))
        .collect();

    for iter in 0..1_000_000 {
        if iter % 256 == 0 {
            // Resynchronize the center with the weights.
            c = vec![0.0; c.len()];
            for (w, p) in weights.iter().zip(&pts) {
                for (ci, x) in c.iter_mut().zip(p.iter()) {
                    *ci += w * x;
                }
            }
        }
        let d: Vec<f64> = pts.iter().map(|p| sq_dist(p, &c)).collect();
        let lower: f64 = weights.iter().zip(&d).map(|(w, di)| w * di).sum();
        if lower <= 0.0 {
            break;
        }
        let (far, &d_far) = d
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("nonempty");
        let (near, &d_near) = d
            .iter()
            .enumerate()
            .filter(|&(i, _)| weights[i] > 0.0)
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("weights sum to one");
        let up = d_far / lower - 1.0;
        let down = 1.0 - d_near / lower;
        if up.max(down) <= 1e-14 {
            break;
        }
        if up >= down {
            let s = up / (2.0 * (1.0 + up));
            weights.iter_mut().for_each(|w| *w *= 1.0 - s);
            weights[far] += s;
            for (ci, x) in c.iter_mut().zip(pts[far]) {
                *ci = (1.0 - s) * *ci + s * x;
            }
        } else {
            let w_near = weights[near];
            let s = (down / (2.0 * (1.0 - down))).min(w_near / (1.0 - w_near));
            weights.iter_mut().for_each(|w| *w *= 1.0 + s);
            weights[near] -= s;
            if weights[near] < 1e-300 {
                weights[near] = 0.0;
            }
            for (ci, x) in c.iter_mut().zip(pts[near]) {
                *ci = (1.0 + s) * *ci - s * x;
            }
        }
    }
    c
}

/// Whether the open Euclidean enclosing balls of `m` and `w` are disjoint.
///
/// Tangent balls (center distance equal to the radius sum, up to `1e-12`)
/// count as disjoint.
pub fn enclosing_balls_disjoint(m: &PointCloud, w: &PointCloud) -> Result<bool> {
    check_dims(m.dim(), w.dim())?;
    let (bm, bw) = (cheb_l2(m), cheb_l2(w));
    let d = dist_unchecked(bm.center.coords(), bw.center.coords(), NormTag::L2);
    Ok(d >= bm.radius + bw.radius - 1e-12)
}
