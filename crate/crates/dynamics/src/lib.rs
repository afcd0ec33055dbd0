//! Time evolution by eigenbasis phases.
//!
//! Every evolution here is exact up to diagonalization error: `τ_t(X)` has
//! matrix elements `e^{it(E - E')} ⟨ψ_E, X ψ_{E'}⟩`, so suprema over time are
//! grid maxima over arbitrary grids.

mod error;
mod evolve;
mod grid;
mod pair;
mod rank_one;

pub use error::DynamicsError;
pub use evolve::{commutator, conjugate_phases, heisenberg, heisenberg_truncated, phases};
pub use grid::{GridMax, TimeGrid};
pub use pair::{correlator, counterterm, double_bracket, ground_vector, WindowPair};
pub use rank_one::RankOneTerm;
