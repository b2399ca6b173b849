use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("graph is not realizable: {0}")]
    NotRealizable(String),

    #[error("not divisible: {0}")]
    NotDivisible(String),

    #[error("series denominator has no invertible constant term")]
    SingularSeries,

    /// The representation oracle produced a non-central image; always a bug.
    #[error("oracle image is not scalar: {0}")]
    NonScalar(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
