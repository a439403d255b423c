use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range (p < 2^31)")]
    ModulusTooLarge(u64),
    #[error("p divides n (p = {p}, n = {n})")]
    PDividesN { p: u64, n: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
    #[error("polynomial ring mismatch")]
    RingMismatch,
    #[error("exponent {exponent} is not divisible by {n}")]
    NotDivisible { exponent: u32, n: u32 },
    #[error("{q} is not a power of the characteristic {p}")]
    NotCharacteristicPower { q: u64, p: u64 },
    #[error("inhomogeneous polynomial where a homogeneous one is required")]
    Inhomogeneous,
    #[error("expected a ring in {expected} variables, found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("a denominator vanishes for these parameters")]
    ZeroDenominator,
    #[error("closed form evaluated to the non-integer {0}")]
    NonIntegral(String),
    #[error("instance exceeds the desk-scale bound: {0}")]
    DeskScale(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("witness does not re-expand to the target")]
    WitnessMismatch,
    #[error("F-purity criterion and Fedder oracle disagree for n = {n}, p = {p}")]
    OracleDisagreement { n: u64, p: u64 },
}
