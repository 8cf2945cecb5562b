use thiserror::Error;

/// Errors raised by the algebraic layers and the cellular automaton models.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),

    #[error("incompatible rings: modulus {left} vs modulus {right}")]
    IncompatibleRings { left: u64, right: u64 },

    #[error("{prime} is not a prime divisor of the modulus {modulus}")]
    NotAPrimeDivisor { prime: u64, modulus: u64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("malformed endomorphism: entry ({row},{col}) of delta_{offset} is {value}, not divisible by {divisor}")]
    MalformedEndomorphism {
        offset: i64,
        row: usize,
        col: usize,
        value: u64,
        divisor: u64,
    },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("group has several primes; split it into prime components first")]
    MultiplePrimes,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid rule: {0}")]
    InvalidRule(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
