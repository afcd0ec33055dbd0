//! Transitions across Fermi projections `P^(E) = χ_{(-∞, E]}(H)`.

use spectral::{EnergyWindow, SpectralData, WindowBasis};
use spin_core::linalg::op_norm;
use spin_core::{BlockOperator, Observable};

use crate::error::{DiagnosticsError, Result};

/// `C_r e^{-r ΔE}` with `r = 1/(4θγ)` and `C_r = 1/(1 - 1/2)² = 4`.
pub fn hadamard_bound(theta: f64, gamma: f64, de: f64) -> f64 {
    4.0 * (-de / (4.0 * theta * gamma)).exp()
}

fn below(e: f64) -> EnergyWindow {
    EnergyWindow { lo: f64::NEG_INFINITY, hi: e, lo_closed: true, hi_closed: true, tol: spectral_tol() }
}

fn above(e: f64) -> EnergyWindow {
    EnergyWindow { lo: e, hi: f64::INFINITY, lo_closed: false, hi_closed: true, tol: spectral_tol() }
}

fn spectral_tol() -> f64 {
    EnergyWindow::everything().tol
}

/// `‖P^(E) X P̄^(E')‖` for `E < E'`.
pub fn fermi_transition(sd: &SpectralData, x: &BlockOperator, e: f64, e2: f64) -> Result<f64> {
    if !(e < e2) {
        return Err(DiagnosticsError::InvalidInput(format!("need E < E', got {e} and {e2}")));
    }
    if !sd.is_complete() {
        return Err(DiagnosticsError::IncompleteSpectrum);
    }
    let low = WindowBasis::new(sd, below(e))?;
    let high = WindowBasis::new(sd, above(e2))?;
    if low.dim() == 0 || high.dim() == 0 {
        return Ok(0.0);
    }
    Ok(op_norm(low.cross(x, &high).view()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermiCheck {
    /// Pairs `E < E'` of distinct eigenvalues.
    pub pairs: usize,
    /// Pairs whose norm was computed; the others satisfy `‖X‖ ≤ bound`.
    pub evaluated: usize,
    pub violations: usize,
    /// Largest ratio of measured norm to bound among evaluated pairs.
    pub worst_ratio: f64,
}

/// Checks `‖P^(E) X P̄^(E')‖ ≤ 4e^{-(E'-E)/(4θγ)}` with `γ = |S_X|` for every pair of distinct eigenvalues.
///
/// Pairs with `E' - E ≤ 4θγ ln(4/‖X‖)` hold because the norm never exceeds `‖X‖`;
/// with `exhaustive` they are evaluated as well.
pub fn fermi_check(sd: &SpectralData, x: &Observable, theta: f64, exhaustive: bool) -> Result<FermiCheck> {
    if !sd.is_complete() {
        return Err(DiagnosticsError::IncompleteSpectrum);
    }
    let gamma = x.support.len() as f64;
    let xnorm = x.op_norm();
    let clusters: Vec<f64> =
        sd.clusters(sd.levels()).iter().map(|c| c.last().expect("nonempty cluster").energy).collect();
    let m = clusters.len();
    let pairs = m * m.saturating_sub(1) / 2;
    if m < 2 {
        return Ok(FermiCheck { pairs, evaluated: 0, violations: 0, worst_ratio: 0.0 });
    }
    let threshold = if exhaustive {
        f64::NEG_INFINITY
    } else if xnorm <= 0.0 {
        return Ok(FermiCheck { pairs, evaluated: 0, violations: 0, worst_ratio: 0.0 });
    } else {
        4.0 * theta * gamma * (4.0 / xnorm).ln()
    };
    let (emin, emax) = (clusters[0], clusters[m - 1]);
    let rows = WindowBasis::new(sd, below(emax - threshold.max(0.0)))?;
    let cols = WindowBasis::new(sd, above(emin + threshold.max(0.0)))?;
    let row_e = rows.energies();
    let col_e = cols.energies();
    let full = rows.cross(&x.op, &cols);
    let mut evaluated = 0;
    let mut violations = 0;
    let mut worst = 0.0f64;
    let tol = sd.cluster_tol();
    for (a, &ea) in clusters.iter().enumerate() {
        let r = row_e.partition_point(|&v| v <= ea + tol);
        if r == 0 {
            continue;
        }
        for &eb in &clusters[a + 1..] {
            if !(eb - ea > threshold) {
                continue;
            }
            let c = col_e.partition_point(|&v| v <= eb + tol);
            evaluated += 1;
            if c == col_e.len() {
                continue;
            }
            let f = op_norm(full.slice(ndarray::s![..r, c..]).view());
            let bound = hadamard_bound(theta, gamma, eb - ea);
            if f > bound * (1.0 + 1e-12) + 1e-12 {
                violations += 1;
            }
            worst = worst.max(f / bound);
        }
    }
    Ok(FermiCheck { pairs, evaluated, violations, worst_ratio: worst })
}

/// One exactly evaluated pair of [`fermi_grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermiPair {
    pub e: f64,
    pub e2: f64,
    pub norm: f64,
    pub bound: f64,
}

/// `‖P^(E) X P̄^(E')‖` against the bound on `n_low x n_high` pairs of distinct
/// eigenvalues, `E` spread over the lowest eighth of the levels and `E'` over the highest.
pub fn fermi_grid(sd: &SpectralData, x: &Observable, theta: f64, n_low: usize, n_high: usize) -> Result<Vec<FermiPair>> {
    if !sd.is_complete() {
        return Err(DiagnosticsError::IncompleteSpectrum);
    }
    let clusters: Vec<f64> =
        sd.clusters(sd.levels()).iter().map(|c| c.last().expect("nonempty cluster").energy).collect();
    let m = clusters.len();
    let span = m / 8;
    if span < n_low.max(n_high) || n_low == 0 || n_high == 0 {
        return Err(DiagnosticsError::InvalidInput(format!(
            "{m} distinct levels are too few for a {n_low} x {n_high} grid"
        )));
    }
    let pick = |k: usize, n: usize| (k * (span - 1)) / (n - 1).max(1);
    let lows: Vec<f64> = (0..n_low).map(|k| clusters[pick(k, n_low)]).collect();
    let highs: Vec<f64> = (0..n_high).map(|k| clusters[m - 1 - span + pick(k, n_high)]).collect();
    let rows = WindowBasis::new(sd, below(lows[n_low - 1]))?;
    let cols = WindowBasis::new(sd, above(highs[0]))?;
    let (row_e, col_e) = (rows.energies(), cols.energies());
    let full = rows.cross(&x.op, &cols);
    let tol = sd.cluster_tol();
    let gamma = x.support.len() as f64;
    let mut out = Vec::with_capacity(n_low * n_high);
    for &e in &lows {
        let r = row_e.partition_point(|&v| v <= e + tol);
        for &e2 in &highs {
            let c = col_e.partition_point(|&v| v <= e2 + tol);
            let norm = if c == col_e.len() { 0.0 } else { op_norm(full.slice(ndarray::s![..r, c..]).view()) };
            out.push(FermiPair { e, e2, norm, bound: hadamard_bound(theta, gamma, e2 - e) });
        }
    }
    Ok(out)
}
