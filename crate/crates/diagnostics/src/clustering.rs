//! Dynamical clustering inside a window `K = [Θ₀, Θ₂]` with `Θ₂ < min(2Θ₀, Θ₁)`.

use dynamics::{conjugate_phases, phases, GridMax, TimeGrid, WindowPair};
use ndarray::Array2;
use spectral::{EnergyWindow, SpectralData};
use spin_core::linalg::op_norm;
use spin_core::{Observable, C64};

use crate::error::{DiagnosticsError, Result};
use crate::point::{DiagnosticPoint, Flag};

/// Bottom `Θ₀ = 1 - 1/Δ` of the droplet band and top `Θ₁` of the localization window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DropletBounds {
    pub theta0: f64,
    pub theta1: f64,
}

impl DropletBounds {
    /// `Θ₁ = (2 - δ)Θ₀`.
    pub fn new(delta: f64, delta_param: f64) -> Self {
        let theta0 = 1.0 - 1.0 / delta;
        Self { theta0, theta1: (2.0 - delta_param) * theta0 }
    }

    /// Accepts `K = [Θ₀, Θ₂]` (or a sub-interval) with `Θ₂ < min(2Θ₀, Θ₁)`.
    pub fn check_cluster_window(&self, k: &EnergyWindow) -> Result<()> {
        let slack = k.tol * self.theta0.abs().max(1.0);
        if k.lo < self.theta0 - slack {
            return Err(DiagnosticsError::InvalidWindow(format!(
                "window {k} starts below the droplet bottom {}",
                self.theta0
            )));
        }
        let twice = 2.0 * self.theta0;
        if k.hi >= twice - slack {
            return Err(DiagnosticsError::InvalidWindow(format!(
                "window {k} reaches 2Θ₀ = {twice}; localization is impossible from there on (optimality of the droplet spectrum)"
            )));
        }
        if k.hi >= self.theta1 - slack {
            return Err(DiagnosticsError::InvalidWindow(format!("window {k} reaches Θ₁ = {}", self.theta1)));
        }
        Ok(())
    }
}

fn grid_max(grid: &TimeGrid, mut f: impl FnMut(f64) -> f64) -> GridMax {
    grid.max_over::<std::convert::Infallible>(|t| Ok(f(t))).expect("infallible")
}

fn point(name: &str, x: &Observable, y: &Observable, m: GridMax, pair: &WindowPair) -> DiagnosticPoint {
    let p = DiagnosticPoint::from_grid(name, x.support.dist(&y.support) as f64, m);
    if pair.dim() == 0 {
        p.with_flag(Flag::EmptyWindow)
    } else {
        p
    }
}

/// `R_K(τ^K_t(X), Y) = (τ^K_t(X) P̄_K Y)_K`.
fn evolved_correlator(pair: &WindowPair, t: f64) -> Array2<C64> {
    pair.evolved_times_y(t) - conjugate_phases(&pair.x, &pair.energies, t).dot(&pair.y)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringResidual {
    /// `sup_t ‖R_K(τ^K_t X, Y) - (τ^K_t(X)P₀Y + τ^K_t(Y)P₀X)_K‖`
    pub with: DiagnosticPoint,
    /// `sup_t ‖R_K(τ^K_t X, Y)‖`
    pub without: DiagnosticPoint,
}

pub fn clustering_residual(
    sd: &SpectralData,
    x: &Observable,
    y: &Observable,
    k: &EnergyWindow,
    bounds: &DropletBounds,
    grid: &TimeGrid,
) -> Result<ClusteringResidual> {
    bounds.check_cluster_window(k)?;
    let pair = WindowPair::new(sd, &x.op, &y.op, *k)?;
    let one = C64::new(1.0, 0.0);
    let with = grid_max(grid, |t| {
        let mut r = evolved_correlator(&pair, t);
        let [a, b, _, _] = pair.counterterms(t);
        a.add_to(&mut r, -one);
        b.add_to(&mut r, -one);
        op_norm(r.view())
    });
    let without = grid_max(grid, |t| op_norm(evolved_correlator(&pair, t).view()));
    Ok(ClusteringResidual {
        with: point("clustering_residual", x, y, with, &pair),
        without: point("clustering_correlator", x, y, without, &pair),
    })
}

/// `sup_t ‖([[τ^K_t(X), Y]])_K‖`.
pub fn double_bracket_norm(
    sd: &SpectralData,
    x: &Observable,
    y: &Observable,
    k: &EnergyWindow,
    bounds: &DropletBounds,
    grid: &TimeGrid,
) -> Result<DiagnosticPoint> {
    bounds.check_cluster_window(k)?;
    let pair = WindowPair::new(sd, &x.op, &y.op, *k)?;
    let m = grid_max(grid, |t| op_norm(pair.double_bracket(t).view()));
    Ok(point("double_bracket", x, y, m, &pair))
}

/// `sup_t Σ_{E ∈ σ_K} |tr R_E(τ^K_t(X), Y)|`, degenerate eigenvalues taken as clusters.
pub fn per_eigenstate_clustering(
    sd: &SpectralData,
    x: &Observable,
    y: &Observable,
    k: &EnergyWindow,
    grid: &TimeGrid,
) -> Result<DiagnosticPoint> {
    let pair = WindowPair::new(sd, &x.op, &y.op, *k)?;
    let levels = sd.window_levels(k)?;
    let mut owner = vec![0usize; levels.len()];
    let mut start = 0;
    let clusters: Vec<std::ops::Range<usize>> = sd
        .clusters(&levels)
        .into_iter()
        .enumerate()
        .map(|(c, cl)| {
            let r = start..start + cl.len();
            owner[r.clone()].iter_mut().for_each(|o| *o = c);
            start = r.end;
            r
        })
        .collect();
    // (X P̄_K Y)_{aa}
    let outside = pair.correlator();
    let m = grid_max(grid, |t| {
        let d = phases(&pair.energies, t);
        clusters
            .iter()
            .enumerate()
            .map(|(c, r)| {
                let mut tr = C64::new(0.0, 0.0);
                for a in r.clone() {
                    let mut s = outside[[a, a]];
                    for b in 0..pair.dim() {
                        if owner[b] != c {
                            s += pair.x[[a, b]] * d[b].conj() * pair.y[[b, a]];
                        }
                    }
                    tr += d[a] * s;
                }
                tr.norm()
            })
            .sum()
    });
    Ok(point("per_eigenstate_clustering", x, y, m, &pair))
}

/// `sup_t |tr (τ^K_t(X)P₀Y)_K|`.
pub fn counterterm_trace(
    sd: &SpectralData,
    x: &Observable,
    y: &Observable,
    k: &EnergyWindow,
    grid: &TimeGrid,
) -> Result<DiagnosticPoint> {
    let pair = WindowPair::new(sd, &x.op, &y.op, *k)?;
    let m = grid_max(grid, |t| pair.counterterms(t)[0].trace().norm());
    Ok(point("counterterm_trace", x, y, m, &pair))
}
