use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division by zero and similar field failures.
    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    /// The caller combined incompatible objects (mixed fields, rank mismatch, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// An element was expected to lie in a subspace and does not.
    #[error("membership error: {0}")]
    Membership(String),

    /// Input text could not be parsed.
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// An iteration or degree cap was hit.
    #[error("resource limit reached: {0}")]
    Resource(String),

    /// An internal consistency check failed.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}
