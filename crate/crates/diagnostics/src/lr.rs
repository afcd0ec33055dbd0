//! Zero-velocity Lieb-Robinson norms, with and without the ground-state counterterms.

use dynamics::{commutator, conjugate_phases, GridMax, TimeGrid, WindowPair};
use ndarray::Array2;
use spectral::{EnergyWindow, SpectralData, WindowBasis};
use spin_core::linalg::trace_norm;
use spin_core::{Observable, C64};

use crate::error::Result;
use crate::point::{DiagnosticPoint, Flag};

fn distance(x: &Observable, y: &Observable) -> f64 {
    x.support.dist(&y.support) as f64
}

fn point(name: &str, x: &Observable, y: &Observable, m: GridMax, empty: bool) -> DiagnosticPoint {
    let p = DiagnosticPoint::from_grid(name, distance(x, y), m);
    if empty {
        p.with_flag(Flag::EmptyWindow)
    } else {
        p
    }
}

fn grid_max(grid: &TimeGrid, f: impl FnMut(f64) -> f64) -> GridMax {
    let mut f = f;
    grid.max_over::<std::convert::Infallible>(|t| Ok(f(t))).expect("infallible")
}

/// `sup_t ‖[τ_t(X_W), Y_W]‖₁`.
pub fn lr_norm(sd: &SpectralData, x: &Observable, y: &Observable, w: &EnergyWindow, grid: &TimeGrid) -> Result<DiagnosticPoint> {
    let basis = WindowBasis::new(sd, *w)?;
    let xw = basis.compress(&x.op);
    let yw = basis.compress(&y.op);
    let e = basis.energies();
    let m = grid_max(grid, |t| trace_norm(commutator(&conjugate_phases(&xw, &e, t), &yw).view()));
    Ok(point("lr_norm", x, y, m, basis.dim() == 0))
}

/// The commutator in `I₀` with and without subtracting `(τ_t(X)P₀Y - YP₀τ_t(X))_I`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountertermResidual {
    pub with: DiagnosticPoint,
    pub without: DiagnosticPoint,
}

/// Mask of the `I₀` basis positions that belong to `I`, i.e. everything but the ground level.
fn excited_mask(pair: &WindowPair, sd: &SpectralData) -> Vec<bool> {
    let e0 = sd.ground_energy();
    let tol = sd.cluster_tol();
    pair.energies.iter().map(|&e| e > e0 + tol).collect()
}

fn restrict(mut m: Array2<C64>, keep: &[bool]) -> Array2<C64> {
    for ((i, j), z) in m.indexed_iter_mut() {
        if !(keep[i] && keep[j]) {
            *z = C64::new(0.0, 0.0);
        }
    }
    m
}

/// `sup_t ‖[τ_t(X_{I₀}), Y_{I₀}] - (τ_t(X)P₀Y - YP₀τ_t(X))_I‖₁`, and the same without the counterterms.
pub fn lr_counterterm_residual(
    sd: &SpectralData,
    x: &Observable,
    y: &Observable,
    i0: &EnergyWindow,
    grid: &TimeGrid,
) -> Result<CountertermResidual> {
    let pair = WindowPair::new(sd, &x.op, &y.op, *i0)?;
    let keep = excited_mask(&pair, sd);
    let bracket = |t: f64| commutator(&conjugate_phases(&pair.x, &pair.energies, t), &pair.y);
    let empty = pair.dim() == 0;
    let with = grid_max(grid, |t| {
        let [xp0y, _, yp0x, _] = pair.counterterms(t);
        let mut ct = Array2::zeros((pair.dim(), pair.dim()));
        xp0y.add_to(&mut ct, C64::new(1.0, 0.0));
        yp0x.add_to(&mut ct, C64::new(-1.0, 0.0));
        trace_norm((bracket(t) - restrict(ct, &keep)).view())
    });
    let without = grid_max(grid, |t| trace_norm(bracket(t).view()));
    Ok(CountertermResidual {
        with: point("lr_counterterm_residual", x, y, with, empty),
        without: point("lr_commutator_i0", x, y, without, empty),
    })
}

/// `‖(τ_t(X)P₀Y)_W‖₁` at every grid time; constant in `t`.
pub fn counterterm_norms(sd: &SpectralData, x: &Observable, y: &Observable, w: &EnergyWindow, grid: &TimeGrid) -> Result<Vec<f64>> {
    let pair = WindowPair::new(sd, &x.op, &y.op, *w)?;
    Ok(grid.points.iter().map(|&t| pair.counterterms(t)[0].norm()).collect())
}

/// Maximum of `‖[[τ_t(X_{I₀}), τ_s(Y_{I₀})], Z_{I₀}]‖₁` over pairs of grid times.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleCommutator {
    pub point: DiagnosticPoint,
    pub s_star: f64,
}

pub fn double_comm_norm(
    sd: &SpectralData,
    x: &Observable,
    y: &Observable,
    z: &Observable,
    i0: &EnergyWindow,
    t_grid: &TimeGrid,
    s_grid: &TimeGrid,
) -> Result<DoubleCommutator> {
    let basis = WindowBasis::new(sd, *i0)?;
    let (xw, yw, zw) = (basis.compress(&x.op), basis.compress(&y.op), basis.compress(&z.op));
    let e = basis.energies();
    let ys: Vec<Array2<C64>> = s_grid.points.iter().map(|&s| conjugate_phases(&yw, &e, s)).collect();
    let mut best = (f64::NEG_INFINITY, f64::NAN, f64::NAN);
    for &t in &t_grid.points {
        let xt = conjugate_phases(&xw, &e, t);
        for (ys_m, &s) in ys.iter().zip(&s_grid.points) {
            let v = trace_norm(commutator(&commutator(&xt, ys_m), &zw).view());
            if v > best.0 {
                best = (v, t, s);
            }
        }
    }
    let m = GridMax {
        value: best.0.max(0.0),
        t_star: best.1,
        at_boundary: t_grid.points.len() > 1 && t_grid.points.last() == Some(&best.1),
    };
    let mut p = point("double_commutator", x, y, m, basis.dim() == 0);
    if s_grid.points.len() > 1 && s_grid.points.last() == Some(&best.2) {
        p = p.with_flag(Flag::GridBoundary);
    }
    Ok(DoubleCommutator { point: p, s_star: best.2 })
}
