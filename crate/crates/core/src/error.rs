use thiserror::Error;

use crate::rootfind::ComplexRoot;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("entries length {len} does not match a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize, len: usize },

    #[error("index {index} outside 1..={ambient}")]
    IndexOutOfRange { index: usize, ambient: usize },

    #[error("index set members must be strictly increasing")]
    UnsortedIndexSet,

    #[error("index set over 1..={found} used with a dimension of {expected}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("row and column index sets differ in size ({rows} vs {cols})")]
    CardinalityMismatch { rows: usize, cols: usize },

    #[error("{what}: dimension {n} exceeds cap {cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("root finder did not converge after {iterations} iterations")]
    NonConvergence {
        iterations: usize,
        partial: Vec<ComplexRoot>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
