use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed request: wrong lengths, conflicting flags, order cap exceeded.
    #[error("usage error: {0}")]
    Usage(String),

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A closed-form value disagreed with its inner-product verification.
    #[error("integrity error: {quantity} closed form {closed} vs computed {computed} (tolerance {tolerance})")]
    Integrity {
        quantity: &'static str,
        closed: f64,
        computed: f64,
        tolerance: f64,
    },

    /// Consecutive states along a loop are too far apart to resolve the phase.
    #[error("resolution error: overlap magnitude {overlap:.3e} between vertices {index} and {next} is below {threshold:.0e}")]
    Resolution {
        index: usize,
        next: usize,
        overlap: f64,
        threshold: f64,
    },

    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Json(_) => 3,
            Error::Integrity { .. } => 1,
            _ => 2,
        }
    }
}
