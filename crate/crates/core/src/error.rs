use thiserror::Error;

/// Errors raised by kernel evaluation, solvers, and spectral analysis.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point ({x}, {y}) lies outside the kernel domain [0, 1] x [0, 1]")]
    Domain { x: f64, y: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("row {row} has norm {norm}, expected a unit vector")]
    InvalidNorm { row: usize, norm: f64 },

    #[error("exact enumeration supports at most {max} columns, got {cols}; use local_search_d1 instead")]
    Capacity { cols: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn mismatch(msg: impl Into<String>) -> Error {
    Error::DimensionMismatch(msg.into())
}
