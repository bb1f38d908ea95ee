use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit in 32 bits")]
    ModulusTooLarge(u64),
    #[error("prime {p} is outside the supported range (max {max})")]
    PrimeOutOfRange { p: u64, max: u64 },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("ragged matrix: row {row} has length {len}, expected {expected}")]
    RaggedRows { row: usize, len: usize, expected: usize },
    #[error("operation requires the group basis")]
    BasisMismatch,
    #[error("elements live over different primes or coefficient rings")]
    RingMismatch,
    #[error("the pair (0, 0) does not define a point of P^1")]
    ZeroPair,
    #[error("matrix is not invertible mod {0}")]
    Singular(u32),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
