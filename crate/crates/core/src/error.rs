use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must satisfy 2 <= n < 2^40, got {0}")]
    InvalidModulus(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("prime power {p}^{r} is out of range")]
    PrimePowerOutOfRange { p: u64, r: u32 },
    #[error("{a} is not invertible modulo {n}")]
    NotInvertible { a: i64, n: u64 },
    #[error("Jacobi symbol requires an odd positive modulus, got {0}")]
    EvenJacobiModulus(u64),
    #[error("{g} is divisible by {p}")]
    DivisibleByPrime { g: i64, p: u64 },
    #[error("{g} is not a primitive root modulo {modulus}")]
    NotPrimitiveRoot { g: i64, modulus: u64 },
    #[error("map is not a permutation: {0}")]
    NotAPermutation(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("sequences differ as sets: {0} is missing from the reference")]
    SetMismatch(u64),
    #[error("x -> x^{k} is not a bijection modulo {p}")]
    NotBijective { p: u64, k: u64 },
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("class number formulas disagree for p = {p}: {detail}")]
    Inconsistent { p: u64, detail: String },
}
