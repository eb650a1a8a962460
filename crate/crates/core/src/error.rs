use thiserror::Error;

/// Out-of-bounds search parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("N < 3: need at least 3 vertices, got N = {0}")]
    TooFewVertices(usize),
    #[error("k < 1: at least one vertex must be marked")]
    NoMarkedVertices,
    #[error("k >= N: {marked} marked vertices out of N = {n} (at least one vertex must stay unmarked)")]
    TooManyMarked { n: usize, marked: usize },
    #[error("l < 0: self-loop count must be nonnegative, got {0}")]
    NegativeLoops(i64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("capacity exceeded: {required} amplitudes requested, limit is {limit}")]
    CapacityExceeded { required: usize, limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
