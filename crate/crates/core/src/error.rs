use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),
    /// An enumeration exceeded its configured size cap.
    #[error("strategy set exceeds the cap of {cap} strategies")]
    Capacity { cap: usize },
    /// A policy or trace received data inconsistent with its contract.
    #[error("contract violation at round {round}: {message}")]
    Contract { round: u64, message: String },
    /// Parse failure in one of the text formats.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn contract(round: u64, msg: impl Into<String>) -> Self {
        Error::Contract {
            round,
            message: msg.into(),
        }
    }

    /// Attach a round number to contract errors raised without one.
    pub fn at_round(self, round: u64) -> Self {
        match self {
            Error::Contract { message, .. } => Error::Contract { round, message },
            other => other,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
