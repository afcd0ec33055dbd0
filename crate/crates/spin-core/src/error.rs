use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("chain with {n_sites} sites exceeds the memory budget of {limit} sites")]
    Capacity { n_sites: usize, limit: usize },
    #[error("half-length must be at least 1")]
    ZeroLength,
    #[error("site {site} lies outside the chain [-{l}, {l}]")]
    SiteOutOfRange { site: i64, l: usize },
    #[error("support [{s}, {r}] is empty or reversed")]
    EmptySupport { s: i64, r: i64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("block ({to}, {from}) has shape {got:?}, expected {expected:?}")]
    BlockShape {
        to: usize,
        from: usize,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("operators live on different chains")]
    ChainMismatch,
    #[error("LAPACK routine {routine} failed with info = {info}")]
    Lapack { routine: &'static str, info: i32 },
}

pub type Result<T> = std::result::Result<T, CoreError>;
