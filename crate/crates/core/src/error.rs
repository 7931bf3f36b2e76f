use thiserror::Error;

/// Errors raised by the computational modules.
///
/// Validation problems (bad input) are kept apart from `Invariant`, which
/// signals that an internal consistency check failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system: {0}")]
    InvalidType(String),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("row space of the subspace is not contained in the target span")]
    NotContained,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
