use thiserror::Error;

/// Errors raised by the algebra, coefficient and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-exact division: {0}")]
    InexactDivision(String),

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("exponent overflow at position {position}")]
    ExponentOverflow { position: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("incomplete coefficient table: missing entry (p={p}, j={j})")]
    IncompleteTable { p: usize, j: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
