use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("duplicate entry ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },

    #[error("syndrome is not in the span of the selected columns")]
    Unsolvable,

    #[error("selected columns are linearly dependent")]
    DependentColumns,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("probability {0} outside the allowed range")]
    InvalidProbability(f64),

    #[error("construction failed after {retries} retries: {reason}")]
    ConstructionFailed { retries: usize, reason: String },

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("check matrices do not commute (H_Z * H_X^T != 0)")]
    NonCommuting,

    #[error("construction inconsistency: {0}")]
    Inconsistent(String),
}
