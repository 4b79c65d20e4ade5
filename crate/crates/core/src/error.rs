use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range for sample of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    /// Duplicated coordinate values (or tied offsets from the center) prevent
    /// the sort-based quadrant counting; callers fall back to direct counting.
    #[error("ties present in coordinates; fast quadrant counting does not apply")]
    TiesPresent,

    #[error("row {row}: {message}")]
    Csv { row: u64, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
