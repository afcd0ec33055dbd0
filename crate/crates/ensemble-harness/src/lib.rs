//! Disorder ensembles for the droplet diagnostics.
//!
//! A run evaluates one experiment on `realizations` independent disorder draws,
//! aggregates each `(series, abscissa)` into mean, standard error and median, and
//! persists the result as `data.csv` plus `manifest.json`. Output is identical for
//! any number of workers: realizations are keyed by index and aggregated in order.

pub mod aggregate;
pub mod config;
pub mod dos;
pub mod error;
pub mod experiments;
pub mod persist;
pub mod run;

pub use aggregate::{aggregate, series, Row};
pub use config::{Experiment, ExperimentConfig, GridSpec, WindowEcho, Windows};
pub use dos::{dos_estimate, DoSHistogram};
pub use error::{HarnessError, Result};
pub use experiments::{realize, symmetric_pair, Context};
pub use persist::{
    create_run_dir, execute, read_csv, read_manifest, read_realizations, write_csv, write_manifest, FitEntry,
    Manifest, RunOutput, Status, DATA_FILE, MANIFEST_FILE, PER_REAL_DIR, SCHEMA_VERSION,
};
pub use run::{run_ensemble, EnsembleResult, Failure, RealizationRecord};
