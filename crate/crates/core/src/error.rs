use thiserror::Error;

/// Errors raised by constructors, evaluators and loaders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level {level} exceeds truncation {truncation}")]
    TruncationExceeded { level: usize, truncation: usize },
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("block mismatch: {0}")]
    BlockMismatch(String),
    #[error("ill-typed: {0}")]
    IllTyped(String),
    #[error("outside bound: {0}")]
    OutOfBound(String),
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("invalid document: {0}")]
    InvalidDocument(String),
    #[error("unknown reference: {0}")]
    UnknownReference(String),
}

impl Error {
    /// Errors that mean "this instance lies outside what we can evaluate"
    /// rather than "this instance is wrong".
    pub fn is_out_of_scope(&self) -> bool {
        matches!(self, Error::TruncationExceeded { .. } | Error::OutOfBound(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
