use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("budget exceeded: {what} needs at least {needed} steps, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },

    /// Two independent computations of the same quantity disagreed.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_) | Error::FieldMismatch(_) => 2,
            Error::BudgetExceeded { .. } => 3,
            Error::Io(_) | Error::Json(_) | Error::Parse(_) => 4,
            Error::Inconsistent(_) => 1,
        }
    }
}
