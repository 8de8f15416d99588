use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown copy index {0}")]
    UnknownCopy(usize),
    #[error("weight {weight} out of range [{floor}, -1]")]
    WeightOutOfRange { weight: i32, floor: i32 },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("matrix does not preserve the symplectic form")]
    NotSymplectic,
    #[error("component count is not an integer: {0}")]
    NonIntegralCount(String),
    #[error("projection does not carry source relations into the target ideal: {0}")]
    BrokenProjection(String),
    #[error("malformed rational literal `{0}`")]
    BadRational(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
