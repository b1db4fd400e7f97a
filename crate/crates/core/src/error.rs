use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// The variants map onto the CLI exit codes: [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("capacity exceeded: {what} is {actual}, limit is {limit}")]
    Capacity {
        what: &'static str,
        actual: String,
        limit: String,
    },

    #[error("not found: {0}")]
    NotFound(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn capacity(
        what: &'static str,
        actual: impl ToString,
        limit: impl ToString,
    ) -> Self {
        Error::Capacity {
            what,
            actual: actual.to_string(),
            limit: limit.to_string(),
        }
    }

    /// Process exit status for this error: 1 invariant, 2 input, 3 capacity/not-found.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 1,
            Error::InvalidInput(_) | Error::NotPrime(_) | Error::Overflow(_) => 2,
            Error::Capacity { .. } | Error::NotFound(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
