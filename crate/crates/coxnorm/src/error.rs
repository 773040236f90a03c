//! Error type shared by the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    InvalidLabel(String),
    #[error("unknown parabolic selector {0:?}")]
    UnknownSelector(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operation not supported for {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("refusing long-running job: {0}")]
    TooLong(String),
    #[error("fixture parse error at line {line}: {msg}")]
    Fixture { line: usize, msg: String },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
