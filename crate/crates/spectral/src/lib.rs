//! Spectral data of block-diagonal Hamiltonians.
//!
//! Eigenpairs are computed sector by sector. A spectrum may be *capped*: only
//! eigenvalues up to a given energy are computed, and sectors whose Gershgorin
//! lower bound lies above the cap are skipped entirely. Windowed quantities are
//! evaluated in the eigenbasis of the window, which for low-energy windows is
//! small compared with the Hilbert space.

mod cache;
mod calculus;
mod data;
mod error;
mod gap;
mod window;
mod windowed;

pub use cache::{cache_key, load, save};
pub use calculus::{matrix_function, window_projector};
pub use data::{diagonalize, diagonalize_below, Level, SectorSpectrum, SpectralData};
pub use error::SpectralError;
pub use gap::{spectral_gap, GapInfo};
pub use window::{droplet_window, EnergyWindow};
pub use windowed::{window_compress, WindowBasis, WindowedOperator};
