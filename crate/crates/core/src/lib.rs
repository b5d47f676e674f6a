//! Chebyshev centers, Hausdorff and bottleneck distances for finite point
//! clouds in `R^n` under the max norm and the Euclidean norm, plus seeded
//! campaigns that check the stability inequalities relating them.
//!
//! Under the max norm the set of Chebyshev centers of a cloud is an axis box,
//! and the map from clouds to center boxes is 2-Lipschitz for the Hausdorff
//! distance. [`verify`] checks that bound and its companions on random data.

pub mod chebyshev;
pub mod error;
pub mod geometry;
mod matching;
pub mod metrics;
pub mod verify;

pub use chebyshev::{
    cheb_l2, cheb_l2_seeded, cheb_linf, cheb_numeric_oracle, cheb_radius_linf,
    enclosing_balls_disjoint, ChebResultBall, ChebResultBox,
};
pub use error::{Error, Result};
pub use geometry::{
    box_dist_linf, diameter, dist, farthest_dist, midpoint, point_to_set_dist, AxisBox, BallSpec,
    Interval, NormTag, PointCloud, Vector,
};
pub use metrics::{
    box_directed_hausdorff_linf, box_hausdorff_linf, directed_hausdorff, hausdorff,
    hausdorff_via_correspondence, nnet_dist, nnet_dist_bruteforce, Correspondence,
};
