use spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FilterError {
    #[error("invalid filter: {0}")]
    InvalidSpec(String),
    #[error("grid has {points} points across the support; at least 64 are needed")]
    GridTooCoarse { points: usize },
    #[error("{0}")]
    Fit(String),
    #[error("the operation needs the complete spectrum")]
    IncompleteSpectrum,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
