//! The droplet-regime XXZ chain
//!
//! `H = sum_i h_{i,i+1} + lambda sum_i omega_i N_i + beta (N_{-L} + N_L)`
//!
//! with `h = 1/4 (1 - σ^z σ^z) - 1/(4Δ) (σ^x σ^x + σ^y σ^y)`.

mod disorder;
mod error;
mod model;

pub use disorder::{sample_disorder, DisorderKind, DisorderRealization, DisorderSpec};
pub use error::HamError;
pub use model::{build, local_term, one_magnon_anderson, theta0, ChainParams, Tridiagonal};
