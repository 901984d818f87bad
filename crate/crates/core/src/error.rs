use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A name was looked up in a registry (family, similarity, label) and not found.
    #[error("not found: {0}")]
    NotFound(String),

    /// Operand shapes disagree.
    #[error("dimension mismatch: expected {expected}, got {actual} ({context})")]
    Dimension {
        expected: usize,
        actual: usize,
        context: &'static str,
    },

    /// A configuration is structurally invalid for the requested operation.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// NMSE against a zero reference vector.
    #[error("division by zero: NMSE reference vector has zero norm")]
    DivisionByZero,

    /// Malformed input data (image file, CSV row, serialized model).
    #[error("format error: {0}")]
    Format(String),

    /// Underlying file-system failure.
    #[error("file error: {0}")]
    File(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dimension(expected: usize, actual: usize, context: &'static str) -> Self {
        Error::Dimension {
            expected,
            actual,
            context,
        }
    }
}
