use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("probabilities sum to {0}, expected 1")]
    InvalidDistribution(f64),

    #[error("operand must be at least 1")]
    ZeroOperand,

    #[error("missing argument: {0}")]
    MissingArgument(&'static str),

    #[error("empty set not allowed here")]
    EmptySet,

    #[error("cardinality must be at least 1")]
    ZeroCardinality,

    #[error("rate evaluates to 0 at this point")]
    ZeroRate,

    #[error("point outside the operation's domain: {0}")]
    OutOfDomain(&'static str),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("enumeration budget exceeded (limit {0})")]
    BudgetExceeded(u64),

    #[error("duplicate element: {0}")]
    Duplicate(String),

    #[error("parse error: {0}")]
    Parse(String),
}
