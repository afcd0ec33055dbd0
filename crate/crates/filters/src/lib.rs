//! Smooth energy filters with stretched-exponential Fourier decay.
//!
//! Fourier convention: `f̂(t) = (1/2π) ∫ e^{itx} f(x) dx`, inverse `f(x) = ∫ e^{-itx} f̂(t) dt`.

mod bump;
mod decay;
mod error;
mod export;
mod filter;
mod fourier;
mod hastings;
mod sampled;

pub use bump::{gevrey_bump, Bump};
pub use decay::{fit_fourier_decay, FourierDecayFit, ENVELOPE_CEILING, ENVELOPE_FLOOR};
pub use error::FilterError;
pub use export::{write_fourier_csv, write_function_csv};
pub use filter::{filter_f, Filter, FilterSpec};
pub use fourier::{fourier, inverse_fourier, Quadrature};
pub use hastings::{hastings_residual, insertion_check, kf_window, quadrature_integral, reconstruction_bound, reconstruction_error, HastingsResult, InsertionResult};
pub use sampled::SampledFunction;
