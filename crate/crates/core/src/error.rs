use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed arguments or an instance that violates a structural invariant.
    #[error("invalid input: {0}")]
    Input(String),

    /// The requested clustering cannot satisfy the actionability constraint.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// An exhaustive routine was asked to run above its size guard.
    #[error("{what} refuses ground sets larger than {limit} elements (got {n})")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    /// A file could not be parsed.
    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
}
