use thiserror::Error;

/// Errors produced while validating input or running an analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input at {field}: {message}")]
    InvalidInput { field: String, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("slope undefined: the sheaf has rank zero on every component")]
    SlopeUndefined,

    #[error("contradictory hypotheses: {0}")]
    Contradiction(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidInput {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
