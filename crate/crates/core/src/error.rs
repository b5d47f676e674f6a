use thiserror::Error;

/// Errors raised when constructing geometric values or combining them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vectors must have at least one coordinate")]
    ZeroDimension,

    #[error("non-finite coordinate {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("point cloud must contain at least one point")]
    EmptyCloud,

    #[error("cloud sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("interval {index} is inverted: [{lo}, {hi}]")]
    InvertedInterval { index: usize, lo: f64, hi: f64 },

    #[error("negative radius {0}")]
    NegativeRadius(f64),

    #[error("brute-force enumeration refused for N = {n} (limit {limit})")]
    OracleLimit { n: usize, limit: usize },

    #[error("invalid campaign configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
