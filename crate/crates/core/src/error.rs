use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    NotExact,
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("ill-posed density: {0}")]
    IllPosed(String),
    #[error("partition too long: length {len} exceeds {n}")]
    TooLong { len: usize, n: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("input is not symmetric")]
    NotSymmetric,
    #[error("basis built to weight {built} cannot expand weight {needed}")]
    InsufficientBasis { built: usize, needed: usize },
    #[error("zero norm at {0}")]
    ZeroNorm(String),
    #[error("not a polynomial with integer coefficients: {0}")]
    NotIntegerPolynomial(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
