use thiserror::Error;

/// Errors raised while building weight tables, searching them, or
/// generating weight fields.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty distribution")]
    EmptyDistribution,
    #[error("invalid weight {value} at index {index}")]
    InvalidWeight { index: usize, value: f64 },
    #[error("degenerate distribution: weights sum to zero")]
    DegenerateDistribution,
    #[error("accumulation overflow: normalized total drifted to {total}")]
    AccumulationOverflow { total: f64 },
    #[error("cumulative weights decrease at index {index}")]
    NotMonotone { index: usize },
    #[error("empty range [{lo}, {hi}]")]
    EmptyRange { lo: usize, hi: usize },
    #[error("index {index} out of bounds for table of size {len}")]
    OutOfBounds { index: usize, len: usize },
    #[error("uniform variate {0} outside (0, 1]")]
    UniformOutOfRange(f64),
    #[error("input not sorted at position {index}")]
    NotSorted { index: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("scenario degenerate: {0}")]
    ScenarioDegenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
