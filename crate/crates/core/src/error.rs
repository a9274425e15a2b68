use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisorZero,
    #[error("quotient has non-integral coefficients")]
    NonIntegralQuotient,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a nonconstant polynomial")]
    ConstantInput,
    #[error("degree {degree} exceeds the supported limit {limit}")]
    DegreeLimit { degree: usize, limit: usize },
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("input polynomial is reducible")]
    ReducibleInput,
    #[error("node budget of {budget} exceeded")]
    DepthLimit { budget: usize },
    #[error("target polynomial does not divide the composed polynomial")]
    NotADivisor,
    #[error("tree was not built with a single odd exponent >= 3")]
    WrongExponentSet,
    #[error("{a} and {n} are not coprime")]
    NotCoprime { a: i64, n: u64 },
    #[error("root {0} is zero or a unit")]
    UnitRoot(i64),
    #[error("invalid prime set: {0}")]
    InvalidPrimeSet(String),
    #[error("exponent denominator incompatible with the base {0}")]
    IncompatibleDenominator(String),
    #[error("level {level} is below the minimal level {required}")]
    LevelTooSmall { level: u32, required: u32 },
    #[error("polynomial is a monomial or a cyclotomic polynomial up to sign")]
    ExcludedPolynomial,
    #[error("the monoid is antimatter and has no atomic factorizations")]
    AntimatterMonoid,
    #[error("{0} is not an element of the monoid")]
    NotMemberInput(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
