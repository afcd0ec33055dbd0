//! Experiment configuration, presets and the windows derived from them.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use dynamics::TimeGrid;
use hamiltonian::{theta0, ChainParams, DisorderSpec};
use serde::{Deserialize, Serialize};
use spectral::{droplet_window, EnergyWindow};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Spectrum,
    DlDecay,
    Nonspread,
    Lr,
    Cluster,
    Optimality,
    Fermi,
    Hastings,
    Dos,
}

impl Experiment {
    pub const ALL: [Experiment; 9] = [
        Self::Spectrum,
        Self::DlDecay,
        Self::Nonspread,
        Self::Lr,
        Self::Cluster,
        Self::Optimality,
        Self::Fermi,
        Self::Hastings,
        Self::Dos,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Spectrum => "spectrum",
            Self::DlDecay => "dl-decay",
            Self::Nonspread => "nonspread",
            Self::Lr => "lr",
            Self::Cluster => "cluster",
            Self::Optimality => "optimality",
            Self::Fermi => "fermi",
            Self::Hastings => "hastings",
            Self::Dos => "dos",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown experiment '{s}'")))
    }
}

/// `TimeGrid::standard` arguments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub t_lin: f64,
    pub n_lin: usize,
    pub log_lo: f64,
    pub log_hi: f64,
    pub n_log: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { t_lin: 100.0, n_lin: 64, log_lo: -2.0, log_hi: 3.0, n_log: 64 }
    }
}

impl GridSpec {
    pub fn grid(&self) -> TimeGrid {
        TimeGrid::standard(self.t_lin, self.n_lin, self.log_lo, self.log_hi, self.n_log)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub l: usize,
    pub delta: f64,
    pub lambda: f64,
    /// `None` selects `(1 - 1/Δ)/2`.
    pub beta: Option<f64>,
    /// `δ` of the droplet window `I_{1,δ}`.
    pub delta_param: f64,
    /// Gevrey exponent of filters and of stretched fits.
    pub alpha: f64,
    /// Overrides the experiment's primary window `[lo, hi]`.
    pub window: Option<[f64; 2]>,
    /// Half-distances `i` (pairs `-i, i`), ranges `ℓ`, or distances, depending on the experiment.
    pub schedule: Vec<i64>,
    pub grid: GridSpec,
    pub realizations: usize,
    pub seed: u64,
    pub out: PathBuf,
    /// Histogram bins of the density of states.
    pub bins: usize,
    /// Write one JSON file per realization next to the aggregate.
    pub per_real: bool,
}

impl ExperimentConfig {
    /// Localized regime `Δ = 4, λ = 4, δ = 1/2` at `L = 6` with experiment-specific schedules.
    pub fn preset(experiment: Experiment) -> Self {
        let base = Self {
            experiment,
            l: 6,
            delta: 4.0,
            lambda: 4.0,
            beta: None,
            delta_param: 0.5,
            alpha: 0.5,
            window: None,
            schedule: vec![1, 2, 3, 4, 5],
            grid: GridSpec::default(),
            realizations: 200,
            seed: 20240601,
            out: PathBuf::from("out"),
            bins: 64,
            per_real: true,
        };
        match experiment {
            Experiment::Spectrum => Self { l: 5, delta: 2.0, lambda: 1.0, realizations: 1000, schedule: vec![], ..base },
            Experiment::DlDecay => base,
            Experiment::Nonspread => Self { schedule: vec![1, 2, 3, 4], ..base },
            Experiment::Lr => Self { schedule: vec![1, 2, 3, 4, 5, 6], ..base },
            Experiment::Cluster => Self { schedule: vec![1, 2, 3, 4, 5, 6], ..base },
            Experiment::Optimality => Self { schedule: (2..=8).collect(), ..base },
            Experiment::Fermi => Self { l: 5, delta: 2.0, lambda: 1.0, realizations: 100, schedule: vec![], ..base },
            Experiment::Hastings => Self { l: 4, delta: 2.0, lambda: 1.0, realizations: 20, schedule: vec![], ..base },
            Experiment::Dos => Self { l: 6, delta: 2.0, lambda: 1.0, realizations: 400, schedule: vec![], ..base },
        }
    }

    pub fn params(&self) -> Result<ChainParams> {
        Ok(ChainParams::new(self.delta, self.lambda, self.beta, self.l, DisorderSpec::uniform(self.seed))?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.realizations == 0 {
            return bad("realizations must be at least 1".into());
        }
        if !(0.0..1.0).contains(&self.delta_param) {
            return bad(format!("delta_param {} outside [0, 1)", self.delta_param));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha {} outside (0, 1)", self.alpha));
        }
        if let Some([lo, hi]) = self.window {
            if !(lo <= hi) {
                return bad(format!("window [{lo}, {hi}] is empty"));
            }
        }
        if self.experiment == Experiment::Dos && self.bins < 8 {
            return bad(format!("bins = {} but at least 8 are needed", self.bins));
        }
        if self.grid.n_lin == 0 && self.grid.n_log < 2 {
            return bad("time grid has no positive times".into());
        }
        self.params()?;
        let l = self.l as i64;
        for &s in &self.schedule {
            let ok = match self.experiment {
                Experiment::DlDecay | Experiment::Lr | Experiment::Cluster => (1..=l).contains(&s),
                Experiment::Nonspread => s >= 1 && s <= 2 * l,
                Experiment::Optimality => (1..=2 * l).contains(&s),
                _ => true,
            };
            if !ok {
                return bad(format!("schedule entry {s} does not fit the chain [-{l}, {l}]"));
            }
        }
        if matches!(
            self.experiment,
            Experiment::DlDecay | Experiment::Lr | Experiment::Cluster | Experiment::Nonspread | Experiment::Optimality
        ) && self.schedule.is_empty()
        {
            return bad(format!("{} needs a non-empty schedule", self.experiment));
        }
        let w = self.windows()?;
        if self.experiment == Experiment::Cluster {
            diagnostics::DropletBounds::new(self.delta, self.delta_param)
                .check_cluster_window(&w.cluster)
                .map_err(|e| HarnessError::Config(e.to_string()))?;
        }
        Ok(())
    }

    pub fn windows(&self) -> Result<Windows> {
        Windows::new(self)
    }
}

/// Endpoints of an [`EnergyWindow`] as written to the manifest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowEcho {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl From<EnergyWindow> for WindowEcho {
    fn from(w: EnergyWindow) -> Self {
        Self { lo: w.lo, hi: w.hi, lo_closed: w.lo_closed, hi_closed: w.hi_closed }
    }
}

/// Every window an experiment may use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Windows {
    pub theta0: f64,
    pub theta1: f64,
    /// `I_{1,δ} = [Θ₀, Θ₁]`.
    pub droplet: EnergyWindow,
    /// `I₀ = [0, Θ₁]`.
    pub i0: EnergyWindow,
    /// `K = [Θ₀, Θ₂]` with `Θ₂` short of `min(2Θ₀, Θ₁)`.
    pub cluster: EnergyWindow,
    /// Droplet part of the one-magnon band.
    pub witness_low: EnergyWindow,
    /// One-magnon band above `2Θ₀`.
    pub witness_high: EnergyWindow,
}

/// Fraction of `[Θ₀, min(2Θ₀, Θ₁)]` covered by the default clustering window.
const CLUSTER_FRACTION: f64 = 0.95;

impl Windows {
    pub fn echo(&self) -> std::collections::BTreeMap<&'static str, WindowEcho> {
        [
            ("droplet", self.droplet),
            ("i0", self.i0),
            ("cluster", self.cluster),
            ("witness_low", self.witness_low),
            ("witness_high", self.witness_high),
        ]
        .into_iter()
        .map(|(k, w)| (k, w.into()))
        .collect()
    }

    fn new(cfg: &ExperimentConfig) -> Result<Self> {
        let theta0 = theta0(cfg.delta);
        let theta1 = (2.0 - cfg.delta_param) * theta0;
        let droplet = droplet_window(cfg.delta, cfg.delta_param, true)?;
        let override_or = |w: EnergyWindow| -> Result<EnergyWindow> {
            match cfg.window {
                Some([lo, hi]) => Ok(EnergyWindow::closed(lo, hi)?),
                None => Ok(w),
            }
        };
        let top = theta1.min(2.0 * theta0);
        let cluster = EnergyWindow::closed(theta0, theta0 + CLUSTER_FRACTION * (top - theta0))?;
        let (_, band_hi) = diagnostics::disordered_band(cfg.delta, cfg.lambda);
        let (_, clean_hi) = diagnostics::clean_band(cfg.delta);
        let low_hi = theta1.min(clean_hi);
        let high = EnergyWindow::new(2.0 * theta0, band_hi.max(2.0 * theta0), false, true)?;
        let primary = |e: Experiment| cfg.experiment == e;
        Ok(Self {
            theta0,
            theta1,
            droplet: if primary(Experiment::DlDecay) || primary(Experiment::Lr) { override_or(droplet)? } else { droplet },
            i0: if primary(Experiment::Nonspread) { override_or(EnergyWindow::closed(0.0, theta1)?)? } else { EnergyWindow::closed(0.0, theta1)? },
            cluster: if primary(Experiment::Cluster) || primary(Experiment::Hastings) { override_or(cluster)? } else { cluster },
            witness_low: EnergyWindow::closed(theta0, low_hi)?,
            witness_high: if primary(Experiment::Optimality) { override_or(high)? } else { high },
        })
    }
}
