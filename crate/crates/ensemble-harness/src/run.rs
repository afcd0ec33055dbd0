//! Parallel evaluation of a disorder ensemble.

use std::path::Path;
use std::time::Instant;

use diagnostics::DiagnosticPoint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aggregate::{aggregate, Row};
use crate::config::ExperimentConfig;
use crate::experiments::{realize, Context};
use crate::error::{HarnessError, Result};
use crate::persist::write_realization;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationRecord {
    pub index: u64,
    pub seconds: f64,
    pub points: Vec<DiagnosticPoint>,
}

/// A realization that raised an error; `(seed, index)` replays it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub seed: u64,
    pub index: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleResult {
    pub rows: Vec<Row>,
    pub records: Vec<RealizationRecord>,
    pub failures: Vec<Failure>,
    pub wall_seconds: f64,
}

impl EnsembleResult {
    /// With one realization the standard errors are zero by convention.
    pub fn single_realization(&self) -> bool {
        self.records.len() == 1
    }
}

/// Runs every realization on `jobs` workers. When `dump` is given each finished
/// realization is written there immediately.
pub fn run_ensemble(cfg: &ExperimentConfig, jobs: usize, dump: Option<&Path>) -> Result<EnsembleResult> {
    let ctx = Context::new(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let start = Instant::now();
    let outcomes: Vec<(u64, f64, Result<Vec<DiagnosticPoint>>)> = pool.install(|| {
        (0..cfg.realizations as u64)
            .into_par_iter()
            .map(|index| {
                let t0 = Instant::now();
                let r = realize(&ctx, index);
                let secs = t0.elapsed().as_secs_f64();
                if let (Some(dir), Ok(points)) = (dump, &r) {
                    let rec = RealizationRecord { index, seconds: secs, points: points.clone() };
                    if let Err(e) = write_realization(dir, &rec) {
                        log::warn!("could not dump realization {index}: {e}");
                    }
                }
                (index, secs, r)
            })
            .collect()
    });
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for (index, seconds, r) in outcomes {
        match r {
            Ok(points) => records.push(RealizationRecord { index, seconds, points }),
            Err(e) => {
                log::warn!("{} realization {index} (seed {}) failed: {e}", cfg.experiment, cfg.seed);
                failures.push(Failure { seed: cfg.seed, index, message: e.to_string() });
            }
        }
    }
    if records.is_empty() {
        return Err(HarnessError::NoSuccess { experiment: cfg.experiment.to_string(), attempted: cfg.realizations });
    }
    let rows = aggregate(records.iter().map(|r| r.points.as_slice()));
    Ok(EnsembleResult { rows, records, failures, wall_seconds: start.elapsed().as_secs_f64() })
}
