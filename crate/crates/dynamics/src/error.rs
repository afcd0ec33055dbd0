use spectral::SpectralError;
use spin_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("full-space evolution needs the complete spectrum")]
    IncompleteSpectrum,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Core(#[from] CoreError),
}
