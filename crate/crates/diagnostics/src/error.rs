use dynamics::DynamicsError;
use spectral::SpectralError;
use spin_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiagnosticsError {
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("this diagnostic needs the complete spectrum")]
    IncompleteSpectrum,
    #[error("fit refused: {0}")]
    Fit(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type Result<T> = std::result::Result<T, DiagnosticsError>;
