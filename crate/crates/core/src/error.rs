use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arity must be at least 2, got {0}")]
    BadArity(usize),
    #[error("dimension must be at least 1")]
    BadDimension,
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected a tuple of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("tensor order mismatch: expected {expected}, got {got}")]
    OrderMismatch { expected: usize, got: usize },
    #[error("repeated index with nonzero coefficient")]
    RepeatedIndex,
    #[error("factor slot {slot} out of range 1..={order}")]
    BadSlot { slot: usize, order: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("invalid canonical label: {0}")]
    BadLabel(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("precondition failed: {what}\n{report}")]
    Rejected {
        what: String,
        report: ValidationReport,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
