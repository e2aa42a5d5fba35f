use thiserror::Error;

/// Errors raised by the monodromy toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("strand count mismatch: expected {expected}, found {found}")]
    StrandMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid factor: {0}")]
    InvalidFactor(String),

    #[error("position {position} out of range for {len} factors")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("factors at position {0} are not a cancelling node pair")]
    NotCancellingPair(usize),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("covering is not closed over infinity (label product is {0})")]
    NotClosedOverInfinity(String),

    #[error("covering fiber is disconnected (monodromy is not transitive)")]
    NotConnected,

    #[error("fiber Euler characteristic {0} is odd")]
    OddEuler(i64),

    #[error("braid is not liftable for this covering")]
    NotLiftable,

    #[error("covering data incompatible with factorization: {0}")]
    Incompatible(String),

    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),

    #[error("invalid chain system: {0}")]
    InvalidChain(String),

    #[error("target group of order {order} exceeds bound {bound}")]
    BoundExceeded { order: usize, bound: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
