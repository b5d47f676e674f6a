//! Ambient-space primitives: vectors, point clouds, axis boxes and the
//! point/set functionals built on the `l_inf` and `l_2` distances.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which metric is in force on `R^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormTag {
    /// Max norm, `max_j |x_j|`.
    Linf,
    /// Euclidean norm.
    L2,
}

impl NormTag {
    pub fn as_str(self) -> &'static str {
        match self {
            NormTag::Linf => "linf",
            NormTag::L2 => "l2",
        }
    }
}

impl fmt::Display for NormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "linf" => Ok(NormTag::Linf),
            "l2" => Ok(NormTag::L2),
            other => Err(format!("unknown norm `{other}` (expected linf or l2)")),
        }
    }
}

/// A point of `R^n` with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Vector(coords))
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    /// Componentwise `self + t`.
    pub fn translated(&self, t: &Vector) -> Result<Vector> {
        check_dims(self.dim(), t.dim())?;
        Vector::new(self.0.iter().zip(&t.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, factor: f64) -> Result<Vector> {
        Vector::new(self.0.iter().map(|a| a * factor).collect())
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Vector::new(coords)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;

    fn index(&self, j: usize) -> &f64 {
        &self.0[j]
    }
}

/// A nonempty finite multiset of points sharing one dimension.
///
/// Duplicates are kept: the bottleneck metric counts multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCloud", into = "RawCloud")]
pub struct PointCloud {
    dim: usize,
    points: Vec<Vector>,
}

#[derive(Serialize, Deserialize)]
struct RawCloud {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl TryFrom<RawCloud> for PointCloud {
    type Error = Error;

    fn try_from(raw: RawCloud) -> Result<Self> {
        let points = raw
            .points
            .into_iter()
            .map(Vector::new)
            .collect::<Result<Vec<_>>>()?;
        if let Some(p) = points.iter().find(|p| p.dim() != raw.dim) {
            return Err(Error::DimensionMismatch {
                expected: raw.dim,
                found: p.dim(),
            });
        }
        PointCloud::new(points)
    }
}

impl From<PointCloud> for RawCloud {
    fn from(cloud: PointCloud) -> Self {
        RawCloud {
            dim: cloud.dim,
            points: cloud.points.into_iter().map(Vector::into_coords).collect(),
        }
    }
}

impl PointCloud {
    pub fn new(points: Vec<Vector>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyCloud)?;
        let dim = first.dim();
        for p in &points[1..] {
            check_dims(dim, p.dim())?;
        }
        Ok(PointCloud { dim, points })
    }

    /// Builds a cloud from raw coordinate rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| Vector::new(r.as_ref().to_vec()))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vector> {
        self.points.iter()
    }

    pub fn translated(&self, t: &Vector) -> Result<PointCloud> {
        PointCloud::new(
            self.points
                .iter()
                .map(|p| p.translated(t))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn scaled(&self, factor: f64) -> Result<PointCloud> {
        PointCloud::new(
            self.points
                .iter()
                .map(|p| p.scaled(factor))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Per-coordinate `(min, max)` over the cloud.
    pub fn coordinate_extents(&self) -> Vec<(f64, f64)> {
        let mut ext: Vec<(f64, f64)> = self.points[0].coords().iter().map(|&c| (c, c)).collect();
        for p in &self.points[1..] {
            for (e, &c) in ext.iter_mut().zip(p.coords()) {
                e.0 = e.0.min(c);
                e.1 = e.1.max(c);
            }
        }
        ext
    }
}

impl<'a> IntoIterator for &'a PointCloud {
    type Item = &'a Vector;
    type IntoIter = std::slice::Iter<'a, Vector>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// Distance from `x` to the interval; zero inside.
    pub fn clamp_dist(&self, x: f64) -> f64 {
        if x < self.lo {
            self.lo - x
        } else if x > self.hi {
            x - self.hi
        } else {
            0.0
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Axis-aligned box, possibly flat in any number of coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct AxisBox {
    intervals: Vec<Interval>,
}

impl AxisBox {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::ZeroDimension);
        }
        for (index, iv) in intervals.iter().enumerate() {
            for value in [iv.lo, iv.hi] {
                if !value.is_finite() {
                    return Err(Error::NonFinite { index, value });
                }
            }
            if iv.lo > iv.hi {
                return Err(Error::InvertedInterval {
                    index,
                    lo: iv.lo,
                    hi: iv.hi,
                });
            }
        }
        Ok(AxisBox { intervals })
    }

    pub fn from_bounds(bounds: &[(f64, f64)]) -> Result<Self> {
        Self::new(bounds.iter().map(|&(lo, hi)| Interval { lo, hi }).collect())
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn contains(&self, x: &Vector) -> bool {
        x.dim() == self.dim()
            && self
                .intervals
                .iter()
                .zip(x.coords())
                .all(|(iv, &c)| iv.lo <= c && c <= iv.hi)
    }

    /// Number of coordinates with positive width (the `k` of the k-plane).
    pub fn flat_rank(&self) -> usize {
        self.intervals.iter().filter(|iv| iv.hi > iv.lo).count()
    }

    pub fn lower_corner(&self) -> Vector {
        Vector(self.intervals.iter().map(|iv| iv.lo).collect())
    }

    pub fn upper_corner(&self) -> Vector {
        Vector(self.intervals.iter().map(|iv| iv.hi).collect())
    }

    /// All `2^k` distinct vertices, where `k` is the number of non-flat coordinates.
    pub fn vertices(&self) -> Vec<Vector> {
        let mut out = vec![Vec::with_capacity(self.dim())];
        for iv in &self.intervals {
            if iv.hi > iv.lo {
                out = out
                    .into_iter()
                    .flat_map(|v| {
                        let mut a = v.clone();
                        a.push(iv.lo);
                        let mut b = v;
                        b.push(iv.hi);
                        [a, b]
                    })
                    .collect();
            } else {
                out.iter_mut().for_each(|v| v.push(iv.lo));
            }
        }
        out.into_iter().map(Vector).collect()
    }

    pub fn translated(&self, t: &Vector) -> Result<AxisBox> {
        check_dims(self.dim(), t.dim())?;
        AxisBox::new(
            self.intervals
                .iter()
                .zip(t.coords())
                .map(|(iv, &s)| Interval {
                    lo: iv.lo + s,
                    hi: iv.hi + s,
                })
                .collect(),
        )
    }
}

impl TryFrom<Vec<[f64; 2]>> for AxisBox {
    type Error = Error;

    fn try_from(raw: Vec<[f64; 2]>) -> Result<Self> {
        AxisBox::new(
            raw.into_iter()
                .map(|[lo, hi]| Interval { lo, hi })
                .collect(),
        )
    }
}

impl From<AxisBox> for Vec<[f64; 2]> {
    fn from(b: AxisBox) -> Self {
        b.intervals.into_iter().map(|iv| [iv.lo, iv.hi]).collect()
    }
}

/// Closed ball `B[center, radius]` under a named norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallSpec {
    pub center: Vector,
    pub radius: f64,
    pub norm: NormTag,
}

impl BallSpec {
    pub fn new(center: Vector, radius: f64, norm: NormTag) -> Result<Self> {
        if !radius.is_finite() {
            return Err(Error::NonFinite {
                index: 0,
                value: radius,
            });
        }
        if radius < 0.0 {
            return Err(Error::NegativeRadius(radius));
        }
        Ok(BallSpec {
            center,
            radius,
            norm,
        })
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

// Dimension already checked by the caller.
pub(crate) fn dist_unchecked(x: &[f64], y: &[f64], norm: NormTag) -> f64 {
    match norm {
        NormTag::Linf => x
            .iter()
            .zip(y)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max),
        NormTag::L2 => x
            .iter()
            .zip(y)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt(),
    }
}

pub fn dist(x: &Vector, y: &Vector, norm: NormTag) -> Result<f64> {
    check_dims(x.dim(), y.dim())?;
    Ok(dist_unchecked(x.coords(), y.coords(), norm))
}

/// `|xZ|`: distance from a point to the nearest point of a cloud.
pub fn point_to_set_dist(x: &Vector, z: &PointCloud, norm: NormTag) -> Result<f64> {
    check_dims(z.dim(), x.dim())?;
    Ok(z.iter()
        .map(|u| dist_unchecked(x.coords(), u.coords(), norm))
        .fold(f64::INFINITY, f64::min))
}

/// `Mx`: distance from `x` to the farthest point of `M`.
pub fn farthest_dist(m: &PointCloud, x: &Vector, norm: NormTag) -> Result<f64> {
    check_dims(m.dim(), x.dim())?;
    Ok(m.iter()
        .map(|u| dist_unchecked(u.coords(), x.coords(), norm))
        .fold(0.0, f64::max))
}

pub fn diameter(m: &PointCloud, norm: NormTag) -> f64 {
    let pts = m.points();
    let mut best = 0.0_f64;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            best = best.max(dist_unchecked(p.coords(), q.coords(), norm));
        }
    }
    best
}

/// Euclidean midpoint `(x + y) / 2`.
pub fn midpoint(x: &Vector, y: &Vector) -> Result<Vector> {
    check_dims(x.dim(), y.dim())?;
    Ok(Vector(
        x.coords()
            .iter()
            .zip(y.coords())
            .map(|(a, b)| 0.5 * (a + b))
            .collect(),
    ))
}

/// Max-norm distance from a point to an axis box.
pub fn box_dist_linf(x: &Vector, b: &AxisBox) -> Result<f64> {
    check_dims(b.dim(), x.dim())?;
    Ok(b.intervals()
        .iter()
        .zip(x.coords())
        .map(|(iv, &c)| iv.clamp_dist(c))
        .fold(0.0, f64::max))
}
