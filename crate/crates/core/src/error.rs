use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("strategy argument {0} is outside the open interval (0, pi/2)")]
    UnsupportedArgument(f64),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("empty {0}: at least one row and one column are required")]
    Empty(&'static str),

    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point is not a member of the strategy polytope")]
    NotInPolytope,

    #[error("linear program infeasible: {0}")]
    LpInfeasible(String),

    #[error("linear program unbounded: {0}")]
    LpUnbounded(String),

    #[error("duality gap {gap:e} exceeds tolerance (v_low = {v_low}, v_high = {v_high})")]
    DualityGap { v_low: f64, v_high: f64, gap: f64 },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error(
        "equalizing feasibility is not monotone: feasible at {feasible_at}, infeasible at {infeasible_at}"
    )]
    NonMonotoneBracket { feasible_at: f64, infeasible_at: f64 },

    #[error("no verified certificate from method {0}")]
    NoCertificate(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
