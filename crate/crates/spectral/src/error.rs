use spin_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("operator is not block diagonal; off-sector block ({0}, {1})")]
    NotBlockDiagonal(usize, usize),
    #[error("eigensolver failed in sector {sector}: {source}")]
    Eigensolver { sector: usize, source: CoreError },
    #[error("window reaches {hi} but the spectrum was only computed up to {cap}")]
    Uncovered { hi: f64, cap: f64 },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
}
