//! Hilbert-space plumbing for finite spin-1/2 chains on sites `[-L, L]`.
//!
//! Configurations are bit strings: bit `k` set means the spin at site `k - L`
//! points down. States inside a magnon sector are ordered by integer value.
//! Local matrices acting on an interval `[s, r]` use the same convention: bit
//! `k` of a local index refers to site `s + k`, with `0` = up and `1` = down.

extern crate blas_src;

pub mod basis;
pub mod block;
pub mod error;
pub mod linalg;
pub mod local;
pub mod norms;
pub mod observable;
pub mod projector;
pub mod support;

pub use basis::{build_bases, Chain, SectorBasis, DEFAULT_MAX_SITES};
pub use block::{Block, BlockOperator, Columns};
pub use error::CoreError;
pub use norms::{norm, NormKind};
pub use observable::{embed_local, Observable};
pub use projector::{
    compress, ground_projector, minus_projector, plus_projector, plus_projector_sites,
    pm_decompose, PMDecomposition,
};
pub use support::Support;

pub type C64 = num_complex::Complex64;

/// Shorthand for a real complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
