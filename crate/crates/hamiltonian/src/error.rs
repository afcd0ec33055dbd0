use spin_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HamError {
    #[error("anisotropy must satisfy delta > 1, got {0}")]
    InvalidDelta(f64),
    #[error("disorder strength must be nonnegative, got {0}")]
    NegativeLambda(f64),
    #[error("boundary weight {beta} is below (1 - 1/delta)/2 = {min}; the spectral gap is not protected")]
    BetaBelowGap { beta: f64, min: f64 },
    #[error("disorder has {got} entries, the chain has {expected} sites")]
    SizeMismatch { expected: usize, got: usize },
    #[error("disorder value {value} at site {site} lies outside [0, 1]")]
    DisorderOutOfRange { site: i64, value: f64 },
    #[error(transparent)]
    Core(#[from] CoreError),
}
