//! Localization diagnostics evaluated on one disorder realization.
//!
//! Every function takes the spectral data of one Hamiltonian and returns plain
//! numbers or [`DiagnosticPoint`]s; averaging over disorder happens elsewhere.
//! Suprema over time are maxima over a [`dynamics::TimeGrid`].

mod clustering;
mod error;
mod fermi;
mod fit;
mod kernel;
mod lr;
mod nonspread;
mod point;
mod witness;

pub use clustering::{
    clustering_residual, counterterm_trace, double_bracket_norm, per_eigenstate_clustering, ClusteringResidual,
    DropletBounds,
};
pub use error::DiagnosticsError;
pub use fermi::{fermi_check, fermi_grid, fermi_transition, hadamard_bound, FermiCheck, FermiPair};
pub use fit::{fit_decay, DecayFit, DecayModel, EPS_FLOOR};
pub use kernel::{dl_kernel, sandwich_norm, DlKernel};
pub use lr::{counterterm_norms, double_comm_norm, lr_counterterm_residual, lr_norm, CountertermResidual, DoubleCommutator};
pub use nonspread::{nonspread_error, nonspread_observable, Nonspread, Regions};
pub use point::{DiagnosticPoint, Flag};
pub use witness::{clean_band, deloc_witness, disordered_band, DelocWitness, OneMagnon};
