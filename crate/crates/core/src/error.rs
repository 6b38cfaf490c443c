use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("equation is not affine in the unknowns: {0}")]
    NonAffine(String),
    #[error("cyclotomic exponent is not integral at the base point: {0}")]
    NonIntegralExponent(String),
    #[error("character value vanishes at the evaluation point")]
    ZeroCharacterValue,
    #[error("preset diagonal does not specialize to the symmetric cube diagonal: {0}")]
    PresetMismatch(String),
    #[error("exceptional direction: first coordinate vanishes identically")]
    ExceptionalDirection,
    #[error("linear system is inconsistent; witness: {0}")]
    Inconsistent(String),
    #[error("invalid preset: {0}")]
    InvalidPreset(String),
    #[error("derivation failed: {0}")]
    Derivation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
