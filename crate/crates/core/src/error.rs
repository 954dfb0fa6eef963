use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("resource cap exceeded: needed {needed}, cap {cap}")]
    ResourceCap { needed: u128, cap: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("determinant is {0}, expected 1")]
    Determinant(String),

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("{0} is a perfect power or -1")]
    PerfectPower(String),

    #[error("no qualifying prime within cap {cap}")]
    NotFoundWithinCap { cap: u64 },

    #[error("matrix is not upper unitriangular")]
    NotUnitriangular,

    #[error("map is not strictly increasing: {0}")]
    NotMonotone(String),

    #[error("verification failed: {0}")]
    Violation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
