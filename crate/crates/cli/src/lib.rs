//! `droplet-lab`: one subcommand per experiment.
//!
//! Parameters resolve as flag, then `--config` TOML, then the experiment preset.
//! The output root falls back to `DROPLET_LAB_OUT` when neither flag nor file sets it.
//! Exit codes: 0 success, 2 configuration error (nothing computed), 3 runtime failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ensemble_harness::{execute, Experiment, ExperimentConfig, GridSpec, WindowEcho};
use serde::{Deserialize, Serialize};

pub const OUT_ENV: &str = "DROPLET_LAB_OUT";

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => EXIT_CONFIG,
            Self::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "droplet-lab", version, about = "Disorder-averaged diagnostics of the droplet spectrum of the XXZ chain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground energy, spectral gap and one-magnon band edges
    Spectrum(RunArgs),
    /// Eigenfunction correlator in the droplet window against distance
    DlDecay(RunArgs),
    /// Error of the local approximation of τ_t(σ^x_0) against its range
    Nonspread(RunArgs),
    /// Zero-velocity Lieb-Robinson norms with and without counterterms
    Lr(RunArgs),
    /// Dynamical clustering residuals in a window below 2Θ₀
    Cluster(RunArgs),
    /// Delocalization witnesses below and above 2Θ₀
    Optimality(RunArgs),
    /// Transitions across Fermi projections
    Fermi(RunArgs),
    /// Filter insertion identity on random local observables
    Hastings(RunArgs),
    /// Density of states of the one-magnon Anderson model
    Dos(RunArgs),
}

impl Command {
    pub fn split(&self) -> (Experiment, &RunArgs) {
        match self {
            Self::Spectrum(a) => (Experiment::Spectrum, a),
            Self::DlDecay(a) => (Experiment::DlDecay, a),
            Self::Nonspread(a) => (Experiment::Nonspread, a),
            Self::Lr(a) => (Experiment::Lr, a),
            Self::Cluster(a) => (Experiment::Cluster, a),
            Self::Optimality(a) => (Experiment::Optimality, a),
            Self::Fermi(a) => (Experiment::Fermi, a),
            Self::Hastings(a) => (Experiment::Hastings, a),
            Self::Dos(a) => (Experiment::Dos, a),
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// TOML file with any subset of the experiment parameters
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output root; runs go to DIR/<experiment>/<timestamp>
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "U64")]
    pub seed: Option<u64>,
    #[arg(long, value_name = "N")]
    pub realizations: Option<usize>,
    /// Half-length; sites run from -L to L
    #[arg(long = "L", value_name = "N")]
    pub l: Option<usize>,
    /// Anisotropy Δ > 1
    #[arg(long, value_name = "F")]
    pub delta: Option<f64>,
    /// Disorder strength
    #[arg(long, value_name = "F")]
    pub lambda: Option<f64>,
    /// Boundary field; defaults to (1 - 1/Δ)/2
    #[arg(long, value_name = "F")]
    pub beta: Option<f64>,
    /// δ of the droplet window [Θ₀, (2 - δ)Θ₀]
    #[arg(long = "delta-param", value_name = "F")]
    pub delta_param: Option<f64>,
    /// Gevrey exponent in (0, 1)
    #[arg(long, value_name = "F")]
    pub alpha: Option<f64>,
    /// Worker threads; defaults to the available cores
    #[arg(long, value_name = "N")]
    pub jobs: Option<usize>,
    /// Print the resolved configuration and exit
    #[arg(long)]
    pub dry_run: bool,
}

/// Contents of a `--config` file. Every key is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub experiment: Option<Experiment>,
    #[serde(alias = "L")]
    pub l: Option<usize>,
    pub delta: Option<f64>,
    pub lambda: Option<f64>,
    pub beta: Option<f64>,
    pub delta_param: Option<f64>,
    pub alpha: Option<f64>,
    pub window: Option<[f64; 2]>,
    pub schedule: Option<Vec<i64>>,
    pub grid: Option<GridSpec>,
    pub realizations: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub bins: Option<usize>,
    pub per_real: Option<bool>,
    pub jobs: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config file {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("invalid config file {}: {e}", path.display())))
    }
}

/// A configuration ready to run.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub config: ExperimentConfig,
    pub jobs: usize,
    pub dry_run: bool,
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

/// Applies file and flags to the preset of `experiment` and validates the result.
pub fn resolve(experiment: Experiment, args: &RunArgs, env_out: Option<PathBuf>) -> Result<Resolved, CliError> {
    let file = match &args.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    if let Some(e) = file.experiment {
        if e != experiment {
            return Err(CliError::Config(format!("config file is for '{e}' but the subcommand is '{experiment}'")));
        }
    }
    let mut c = ExperimentConfig::preset(experiment);
    set(&mut c.l, file.l);
    set(&mut c.delta, file.delta);
    set(&mut c.lambda, file.lambda);
    if file.beta.is_some() {
        c.beta = file.beta;
    }
    set(&mut c.delta_param, file.delta_param);
    set(&mut c.alpha, file.alpha);
    if file.window.is_some() {
        c.window = file.window;
    }
    set(&mut c.schedule, file.schedule);
    set(&mut c.grid, file.grid);
    set(&mut c.realizations, file.realizations);
    set(&mut c.seed, file.seed);
    set(&mut c.out, file.out.or(env_out));
    set(&mut c.bins, file.bins);
    set(&mut c.per_real, file.per_real);

    set(&mut c.l, args.l);
    set(&mut c.delta, args.delta);
    set(&mut c.lambda, args.lambda);
    if args.beta.is_some() {
        c.beta = args.beta;
    }
    set(&mut c.delta_param, args.delta_param);
    set(&mut c.alpha, args.alpha);
    set(&mut c.realizations, args.realizations);
    set(&mut c.seed, args.seed);
    set(&mut c.out, args.out.clone());

    let jobs = args.jobs.or(file.jobs).unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if jobs == 0 {
        return Err(CliError::Config("jobs must be at least 1".into()));
    }
    c.validate().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(Resolved { config: c, jobs, dry_run: args.dry_run })
}

#[derive(Serialize)]
struct Derived {
    theta0: f64,
    theta1: f64,
    beta: f64,
}

#[derive(Serialize)]
struct DryRun<'a> {
    jobs: usize,
    config: &'a ExperimentConfig,
    derived: Derived,
    windows: BTreeMap<&'static str, WindowEcho>,
}

/// The resolved configuration as TOML, with the derived windows.
pub fn render_resolved(r: &Resolved) -> Result<String, CliError> {
    let w = r.config.windows().map_err(|e| CliError::Config(e.to_string()))?;
    let p = r.config.params().map_err(|e| CliError::Config(e.to_string()))?;
    let doc = DryRun {
        jobs: r.jobs,
        config: &r.config,
        derived: Derived { theta0: w.theta0, theta1: w.theta1, beta: p.beta },
        windows: w.echo(),
    };
    toml::to_string_pretty(&doc).map_err(|e| CliError::Config(e.to_string()))
}

/// Parses `argv` (program name first), runs, and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("droplet-lab: error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let (experiment, args) = cli.command.split();
    let env_out = std::env::var_os(OUT_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    let r = resolve(experiment, args, env_out)?;
    if r.dry_run {
        print!("{}", render_resolved(&r)?);
        return Ok(());
    }
    log::info!("{experiment}: {} realizations on {} workers", r.config.realizations, r.jobs);
    let out = execute(&r.config, r.jobs).map_err(|e| CliError::Runtime(e.to_string()))?;
    for f in &out.result.failures {
        log::warn!("realization {} failed: {}", f.index, f.message);
    }
    println!("{}", out.dir.display());
    Ok(())
}
