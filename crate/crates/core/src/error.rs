use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("target is not K-close to the base point: segment is not minimal")]
    NotKClose,

    #[error("sample count must be at least 2 for distinct endpoints")]
    InvalidSamples,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("brute-force window {window} too small: minimizer touches the window boundary")]
    WindowTooSmall { window: i64 },

    #[error("exhaustive oracle limited to n <= {max}, got n = {n}")]
    OracleMode { n: usize, max: usize },

    #[error("stratum is empty for the requested sign vector")]
    EmptyStratum,

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
