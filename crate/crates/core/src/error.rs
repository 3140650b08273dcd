use thiserror::Error;

/// Errors surfaced by the exact-arithmetic layers and the constructions built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incompatible scalar kinds: {0}")]
    ScalarKindMismatch(String),
    #[error("polynomial does not vanish on line {line}; not divisible by its linear form")]
    NotDivisible { line: u32 },
    #[error("mirror count {0} is even; an odd mirror count is required")]
    EvenMirrorCount(u32),
    #[error("mirror count {0} is odd; an even mirror count is required")]
    OddMirrorCount(u32),
    #[error("coefficient system for q1_{i} is singular")]
    SingularSystem { i: u32 },
    #[error("minor A1 is singular for i = {i}")]
    SingularA1 { i: u32 },
    #[error("polynomial is not quasi-invariant")]
    NotQuasiInvariant,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("index i = {i} out of range for N = {n} (need 1 <= i <= 2N-1, i != N)")]
    InvalidIndex { i: u32, n: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
