use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An exact division by a Pochhammer factor left a remainder, or a
    /// non-integer coefficient survived the final conversion.
    #[error("integrality violation: {0}")]
    IntegralityViolation(String),
    #[error("slope of a zero-rank dimension vector is undefined")]
    ZeroRank,
    #[error("series truncation boxes differ")]
    BoxMismatch,
    #[error("series has the wrong constant term for this operation (expected {expected})")]
    BadConstantTerm { expected: &'static str },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cannot parse dimension vector {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
