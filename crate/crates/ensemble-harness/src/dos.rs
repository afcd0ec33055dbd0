//! Disorder-averaged one-magnon density of states.

use hamiltonian::{one_magnon_anderson, sample_disorder, ChainParams, DisorderRealization};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// Bin edges and the probability mass `η̂` of each bin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoSHistogram {
    pub edges: Vec<f64>,
    pub mass: Vec<f64>,
}

impl DoSHistogram {
    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// `∫ g dη̂` by the midpoint rule.
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.centers().iter().zip(&self.mass).map(|(&c, &m)| m * g(c)).sum()
    }
}

/// Gershgorin interval containing every one-magnon spectrum for `ω ∈ [0, 1]`.
pub fn dos_edges(params: &ChainParams, bins: usize) -> Result<Vec<f64>> {
    if bins < 8 {
        return Err(HarnessError::Config(format!("bins = {bins} but at least 8 are needed")));
    }
    let n = 2 * params.l + 1;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for c in [0.0, 1.0] {
        let t = one_magnon_anderson(params, &DisorderRealization::from_values(vec![c; n]))?;
        for (k, &d) in t.diag.iter().enumerate() {
            let left = if k > 0 { t.off[k - 1].abs() } else { 0.0 };
            let right = t.off.get(k).map_or(0.0, |v| v.abs());
            lo = lo.min(d - left - right);
            hi = hi.max(d + left + right);
        }
    }
    Ok((0..=bins).map(|k| lo + (hi - lo) * k as f64 / bins as f64).collect())
}

/// Fraction of `values` in each bin; the last bin is closed.
pub fn histogram(edges: &[f64], values: &[f64]) -> Vec<f64> {
    let bins = edges.len() - 1;
    let mut counts = vec![0usize; bins];
    for &v in values {
        let k = edges.partition_point(|&e| e <= v).saturating_sub(1).min(bins - 1);
        counts[k] += 1;
    }
    counts.iter().map(|&c| c as f64 / values.len() as f64).collect()
}

/// Histogram of one-magnon eigenvalues averaged over `realizations` draws of `params.disorder`.
pub fn dos_estimate(params: &ChainParams, realizations: usize, bins: usize) -> Result<DoSHistogram> {
    if realizations == 0 {
        return Err(HarnessError::Config("realizations must be at least 1".into()));
    }
    let edges = dos_edges(params, bins)?;
    let mut mass = vec![0.0; bins];
    for index in 0..realizations as u64 {
        let omega = sample_disorder(&params.disorder, params.l, index)?;
        let (e, _) = one_magnon_anderson(params, &omega)?.eigen()?;
        for (m, h) in mass.iter_mut().zip(histogram(&edges, &e)) {
            *m += h;
        }
    }
    mass.iter_mut().for_each(|m| *m /= realizations as f64);
    Ok(DoSHistogram { edges, mass })
}
