use thiserror::Error;

/// Failure modes shared by every module of the toolkit.
///
/// Variants ending in `Bug` signal a broken internal invariant rather than a
/// bad input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime >= 3")]
    NotPrime(u64),
    #[error("{value} has no inverse modulo {modulus}")]
    NotInvertible { value: String, modulus: String },
    #[error("base {base} is divisible by p = {p}")]
    DivisibleBase { base: String, p: u64 },
    #[error("index {index} out of range (must be below {bound})")]
    OutOfRange { index: u64, bound: u64 },
    #[error("p = {p} is not in the residue class {expected}")]
    WrongResidueClass { p: u64, expected: &'static str },
    #[error("{0} is a perfect square")]
    PerfectSquare(u64),
    #[error("{0} is not an admissible discriminant")]
    BadDiscriminant(u64),
    #[error("class number estimate {value} is {distance} away from an integer")]
    PrecisionLoss { value: f64, distance: f64 },
    #[error("unit has u = 0")]
    DegenerateUnit,
    #[error("p-adic valuation of zero")]
    ZeroInput,
    #[error("argument has p-adic valuation 0; the logarithm series diverges")]
    NotSmall,
    #[error("hypothesis failed: {0}")]
    HypothesisFail(String),
    #[error("product is not congruent to {expected} mod {p}")]
    WrongSign { expected: i8, p: u64 },
    #[error("cyclotomic moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("{n} is not a quadratic non-residue mod {p}")]
    NotNonResidue { n: u64, p: u64 },
    #[error("representatives do not tile the residue/non-residue classes mod {0}")]
    BadRepresentatives(u64),
    #[error("abar*bbar is not congruent to r mod p^2")]
    BadFactorization,
    #[error("D = {0} is even")]
    EvenD(u64),
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("{what} exceeds the supported bound {bound}")]
    TooLarge { what: &'static str, bound: u64 },
    #[error("tolerance exceeded: deviation {deviation:e} > {tol:e}")]
    ToleranceExceeded { deviation: f64, tol: f64 },
    #[error("floor-difference identity mismatch: {0}")]
    MismatchBug(String),
    #[error("divisibility invariant violated: {0}")]
    DivisibilityBug(String),
}

pub type Result<T> = std::result::Result<T, Error>;
