use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// An internal identity that must hold by construction failed.
    #[error("consistency failure: {0}")]
    Logic(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn logic(msg: impl Into<String>) -> Self {
        Error::Logic(msg.into())
    }

    pub(crate) fn cap(what: &'static str, value: usize, cap: usize) -> Self {
        Error::CapExceeded { what, value, cap }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DegreeMismatch { .. } | Error::Invalid(_) => 1,
            Error::CapExceeded { .. } | Error::Overflow(_) => 2,
            Error::Logic(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
