//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for point set of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("access-mode mismatch: {0}")]
    ModeMismatch(&'static str),

    #[error("non-finite coordinate in point {index}")]
    NonFiniteCoordinate { index: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("subset is empty")]
    EmptySubset,

    #[error("duplicate index {index} in subset")]
    DuplicateIndex { index: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("combinatorial cap exceeded: {subsets} subsets, cap {cap}")]
    CombinatorialCapExceeded { subsets: u128, cap: u64 },

    #[error("inner-product oracle failed a consistency spot-check: {0}")]
    OracleInconsistent(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("arity mismatch on line {line}: expected {expected} values, found {found}")]
    ArityMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("no data rows in input")]
    EmptyInput,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
