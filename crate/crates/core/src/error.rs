use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not univariate in `{var}`: {poly}")]
    NotUnivariate { var: String, poly: String },
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("generator {0} is outside the index set of {1}")]
    InvalidGenerator(String, String),
    #[error("invalid algebra descriptor `{0}`")]
    BadDescriptor(String),
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
    #[error("cannot parse composition series `{0}`")]
    BadSeries(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation needs a rational value of alpha; specialize the algebra first")]
    SymbolicParameter,
    #[error("classification failed: {0}")]
    Classification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
