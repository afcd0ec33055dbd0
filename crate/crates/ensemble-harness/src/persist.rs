//! `out/<experiment>/<timestamp>/{data.csv, manifest.json, per_real/}`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use diagnostics::{fit_decay, DecayFit, DecayModel, DiagnosticPoint};
use serde::{Deserialize, Serialize};

use crate::aggregate::{series, Row};
use crate::config::{Experiment, ExperimentConfig, WindowEcho};
use crate::error::{HarnessError, Result};
use crate::run::{run_ensemble, EnsembleResult, Failure, RealizationRecord};

pub const SCHEMA_VERSION: u32 = 1;
pub const DATA_FILE: &str = "data.csv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const PER_REAL_DIR: &str = "per_real";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Running,
    Complete,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub index: u64,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitEntry {
    pub series: String,
    pub model: DecayModel,
    pub fit: Option<DecayFit>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub experiment: Experiment,
    pub status: Status,
    pub code_version: String,
    pub started: String,
    pub seed: u64,
    pub jobs: usize,
    pub config: ExperimentConfig,
    pub windows: BTreeMap<String, WindowEcho>,
    pub wall_seconds: Option<f64>,
    pub single_realization: bool,
    pub timing: Vec<Timing>,
    pub failures: Vec<Failure>,
    pub fits: Vec<FitEntry>,
    pub error: Option<String>,
}

impl Manifest {
    pub fn new(cfg: &ExperimentConfig, jobs: usize) -> Result<Self> {
        let windows = cfg.windows()?.echo().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            experiment: cfg.experiment,
            status: Status::Running,
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            started: chrono::Utc::now().to_rfc3339(),
            seed: cfg.seed,
            jobs,
            config: cfg.clone(),
            windows,
            wall_seconds: None,
            single_realization: false,
            timing: Vec::new(),
            failures: Vec::new(),
            fits: Vec::new(),
            error: None,
        })
    }

    pub fn record(&mut self, result: &EnsembleResult) {
        self.status = Status::Complete;
        self.wall_seconds = Some(result.wall_seconds);
        self.single_realization = result.single_realization();
        self.timing = result.records.iter().map(|r| Timing { index: r.index, seconds: r.seconds }).collect();
        self.failures = result.failures.clone();
        self.fits = fits(self.experiment, self.config.alpha, &result.rows);
    }
}

/// Decay fits of the ensemble means for experiments that scan a distance.
pub fn fits(experiment: Experiment, alpha: f64, rows: &[Row]) -> Vec<FitEntry> {
    let names: &[&str] = match experiment {
        Experiment::DlDecay => &["dl_kernel"],
        Experiment::Nonspread => &["nonspread_error"],
        Experiment::Lr => &["lr_norm", "lr_counterterm_residual", "lr_commutator_i0"],
        Experiment::Cluster => &["clustering_residual", "clustering_correlator", "per_eigenstate_clustering", "counterterm_trace"],
        Experiment::Optimality => &["witness_droplet", "witness_above", "dl_kernel"],
        _ => &[],
    };
    let mut out = Vec::new();
    for &name in names {
        let pts: Vec<DiagnosticPoint> =
            series(rows, name).iter().map(|r| DiagnosticPoint::new(name, r.abscissa, r.mean)).collect();
        let mut models = vec![DecayModel::Exponential];
        if experiment == Experiment::Cluster {
            models.push(DecayModel::Stretched { alpha });
        }
        for model in models {
            let (fit, error) = match fit_decay(&pts, model) {
                Ok(f) => (Some(f), None),
                Err(e) => (None, Some(e.to_string())),
            };
            out.push(FitEntry { series: name.to_string(), model, fit, error });
        }
    }
    out
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|source| HarnessError::Json { path: path.into(), source })?;
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, text).map_err(|e| HarnessError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| HarnessError::io(path, e))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| HarnessError::Json { path: path.into(), source })
}

pub fn write_manifest(dir: &Path, m: &Manifest) -> Result<()> {
    write_json(&dir.join(MANIFEST_FILE), m)
}

pub fn read_manifest(dir: &Path) -> Result<Manifest> {
    read_json(&dir.join(MANIFEST_FILE))
}

/// Writes `rows` with a header; an empty slice gives a header-only file.
pub fn write_csv(path: &Path, rows: &[Row]) -> Result<()> {
    let csv_err = |source| HarnessError::Csv { path: path.into(), source };
    let mut w = csv::WriterBuilder::new().has_headers(false).from_path(path).map_err(csv_err)?;
    w.write_record(["experiment", "abscissa", "mean", "stderr", "median", "n", "t_star_mode"]).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

pub fn read_csv(path: &Path) -> Result<Vec<Row>> {
    let csv_err = |source| HarnessError::Csv { path: path.into(), source };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    r.deserialize().map(|row| row.map_err(csv_err)).collect()
}

pub fn write_realization(dir: &Path, rec: &RealizationRecord) -> Result<()> {
    write_json(&dir.join(format!("{:06}.json", rec.index)), rec)
}

/// All realization dumps in `dir`, sorted by index.
pub fn read_realizations(dir: &Path) -> Result<Vec<RealizationRecord>> {
    let mut out: Vec<RealizationRecord> = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| HarnessError::io(dir, e))? {
        let path = entry.map_err(|e| HarnessError::io(dir, e))?.path();
        if path.extension().is_some_and(|x| x == "json") {
            out.push(read_json(&path)?);
        }
    }
    out.sort_by_key(|r| r.index);
    Ok(out)
}

/// Creates `root/<experiment>/<timestamp>`, adding a suffix if that already exists.
pub fn create_run_dir(root: &Path, experiment: Experiment) -> Result<PathBuf> {
    let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%S%.3fZ").to_string();
    let parent = root.join(experiment.name());
    fs::create_dir_all(&parent).map_err(|e| HarnessError::io(&parent, e))?;
    for k in 0u32.. {
        let dir = if k == 0 { parent.join(&stamp) } else { parent.join(format!("{stamp}-{k}")) };
        match fs::create_dir(&dir) {
            Ok(()) => return Ok(dir),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(HarnessError::io(&dir, e)),
        }
    }
    unreachable!("u32 suffixes exhausted")
}

#[derive(Debug)]
pub struct RunOutput {
    pub dir: PathBuf,
    pub manifest: Manifest,
    pub result: EnsembleResult,
}

/// Validates, writes the manifest, runs the ensemble, then writes `data.csv` and the final manifest.
///
/// On a runtime failure the manifest is marked failed and the realization dumps stay in place.
pub fn execute(cfg: &ExperimentConfig, jobs: usize) -> Result<RunOutput> {
    cfg.validate()?;
    let dir = create_run_dir(&cfg.out, cfg.experiment)?;
    let mut manifest = Manifest::new(cfg, jobs)?;
    write_manifest(&dir, &manifest)?;
    let dump = dir.join(PER_REAL_DIR);
    if cfg.per_real {
        fs::create_dir_all(&dump).map_err(|e| HarnessError::io(&dump, e))?;
    }
    match run_ensemble(cfg, jobs, cfg.per_real.then_some(dump.as_path())) {
        Ok(result) => {
            write_csv(&dir.join(DATA_FILE), &result.rows)?;
            manifest.record(&result);
            write_manifest(&dir, &manifest)?;
            Ok(RunOutput { dir, manifest, result })
        }
        Err(e) => {
            manifest.status = Status::Failed;
            manifest.error = Some(e.to_string());
            write_manifest(&dir, &manifest)?;
            Err(e)
        }
    }
}
