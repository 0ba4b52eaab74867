use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error in {input:?} at position {position}: {message}")]
    Parse { input: String, position: usize, message: String },
    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("reflection in {0} is not defined over E")]
    NonIntegralReflection(String),
    #[error("lattice is not positive definite")]
    NotPositiveDefinite,
    #[error("unsupported discriminant: {0}")]
    UnsupportedDiscriminant(String),
    #[error("submodule is not isotropic")]
    NotIsotropic,
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("witness search exhausted without a result: {0}")]
    WitnessSearchExhausted(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("F2 space has no quadratic form: {0}")]
    NoQuadraticForm(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
