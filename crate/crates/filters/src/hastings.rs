use ndarray::{Array2, ArrayView2};
use spectral::{EnergyWindow, SpectralData, WindowBasis};
use spin_core::linalg::op_norm;
use spin_core::{BlockOperator, C64};

use crate::error::FilterError;
use crate::filter::Filter;
use crate::fourier::{inverse_fourier, Quadrature};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HastingsResult {
    /// `‖X f(H) Y - ∫ e^{-irH} Y τ_r(X) f̂(r) dr‖`.
    pub residual: f64,
    /// Bound on the change of the integral when `f` is replaced by its quadrature reconstruction.
    pub quadrature_error: f64,
    /// The quadrature bound exceeds the requested tolerance.
    pub warning: bool,
}

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

fn full_basis(sd: &SpectralData) -> Result<WindowBasis, FilterError> {
    if !sd.is_complete() {
        return Err(FilterError::IncompleteSpectrum);
    }
    Ok(WindowBasis::new(sd, EnergyWindow::everything())?)
}

/// `B_ab = Σ_c Y_ac X_cb g(E_a + E_b - E_c)` over the `c` accepted by `keep`.
fn triple(
    y: ArrayView2<C64>,
    x: ArrayView2<C64>,
    ea: &[f64],
    ec: &[f64],
    eb: &[f64],
    keep: impl Fn(usize) -> bool,
    g: impl Fn(f64) -> f64,
) -> Array2<C64> {
    let mut out = Array2::zeros((ea.len(), eb.len()));
    for (a, &e_a) in ea.iter().enumerate() {
        for (c, &e_c) in ec.iter().enumerate() {
            let yac = y[[a, c]];
            if yac == ZERO || !keep(c) {
                continue;
            }
            let xc = x.row(c);
            let mut row = out.row_mut(a);
            for (b, &e_b) in eb.iter().enumerate() {
                let xcb = xc[b];
                if xcb == ZERO {
                    continue;
                }
                let w = g(e_a + e_b - e_c);
                if w != 0.0 {
                    row[b] += yac * xcb * w;
                }
            }
        }
    }
    out
}

/// Compare `X f(H) Y` with the Fourier-integral form of the Hastings argument.
///
/// The integral is evaluated exactly in the eigenbasis, where its entries are
/// `Σ_c Y_ac X_cb f(E_a + E_b - E_c)`. The quadrature on `quad` enters only
/// through an error bound: replacing `f` by `F(x) = Σ_k w_k f̂(r_k) e^{-i r_k x}`
/// changes the integral by at most `sup |F - f| · ‖ |Y| |X| ‖_F`, the supremum
/// taken over the range of `E_a + E_b - E_c` and bounded by [`reconstruction_bound`].
pub fn hastings_residual(
    sd: &SpectralData,
    x: &BlockOperator,
    y: &BlockOperator,
    filter: &Filter,
    quad: &Quadrature,
    tol: f64,
) -> Result<HastingsResult, FilterError> {
    let full = full_basis(sd)?;
    let e = full.energies();
    let xe = full.compress(x);
    let ye = full.compress(y);
    let fe: Vec<C64> = e.iter().map(|&v| C64::new(filter.eval(v), 0.0)).collect();
    let mut xf = xe.clone();
    for mut row in xf.rows_mut() {
        for (z, w) in row.iter_mut().zip(&fe) {
            *z *= w;
        }
    }
    let lhs = xf.dot(&ye);
    let integral = triple(ye.view(), xe.view(), &e, &e, &e, |_| true, |v| filter.eval(v));
    let residual = op_norm((&lhs - &integral).view());

    let (lo, hi) = (e[0], e[e.len() - 1]);
    let sup = reconstruction_bound(filter, quad, 2.0 * lo - hi, 2.0 * hi - lo);
    let abs_prod = ye.mapv(|z| z.norm()).dot(&xe.mapv(|z| z.norm()));
    let quadrature_error = sup * abs_prod.iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok(HastingsResult { residual, quadrature_error, warning: quadrature_error > tol })
}

/// Bound on `sup |F - f|` over `[a, b]`.
///
/// By Poisson summation the untruncated trapezoid sum equals `Σ_m f(x + 2πm/dt)`,
/// which is `f(x)` when no shifted copy of the support reaches `[a, b]`. What
/// remains is the part of the sum beyond `t_max`, bounded by the sampled tail of `|f̂|`.
/// Returns infinity when shifted copies overlap.
pub fn reconstruction_bound(filter: &Filter, quad: &Quadrature, a: f64, b: f64) -> f64 {
    let (af, bf) = filter.support();
    let period = 2.0 * std::f64::consts::PI / quad.dt;
    if period <= (b - af).max(bf - a) {
        return f64::INFINITY;
    }
    let horizon = filter.decay_horizon(1e-16).max(quad.t_max);
    let edge = 0.5 * quad.dt * (filter.fhat(quad.t_max).norm() + filter.fhat(-quad.t_max).norm());
    let mut tail = 0.0;
    let mut t = quad.t_max + quad.dt;
    while t <= horizon {
        tail += filter.fhat(t).norm();
        t += quad.dt;
    }
    // f̂(-t) is the conjugate of f̂(t)
    edge + 2.0 * quad.dt * tail
}

/// `sup |F - f|` on `[a, b]`, sampled finely enough to resolve the highest frequency of `F`.
pub fn reconstruction_error(filter: &Filter, quad: &Quadrature, a: f64, b: f64) -> f64 {
    let step = (std::f64::consts::PI / (4.0 * quad.t_max)).max((b - a) / 20_000.0);
    let n = ((b - a) / step).ceil().max(1.0) as usize;
    (0..=n)
        .map(|k| {
            let x = a + (b - a) * k as f64 / n as f64;
            (inverse_fourier(quad, x) - filter.eval(x)).norm()
        })
        .fold(0.0, f64::max)
}

/// `∫ e^{-irH} Y τ_r(X) f̂(r) dr` by quadrature, in the eigenbasis of `H`.
/// `y = None` stands for the identity. The general case costs one dense
/// matrix product per node.
pub fn quadrature_integral(
    sd: &SpectralData,
    x: &BlockOperator,
    y: Option<&BlockOperator>,
    quad: &Quadrature,
) -> Result<Array2<C64>, FilterError> {
    let full = full_basis(sd)?;
    let e = full.energies();
    let xe = full.compress(x);
    let n = e.len();
    let mut out = Array2::<C64>::zeros((n, n));
    match y {
        None => {
            // entries X_ab Σ_k w_k f̂(r_k) e^{-i r_k E_b}
            let col: Vec<C64> = e.iter().map(|&eb| inverse_fourier(quad, eb)).collect();
            for ((_, b), z) in out.indexed_iter_mut() {
                *z = col[b];
            }
            out = out * &xe;
        }
        Some(y) => {
            let ye = full.compress(y);
            for (r, w) in quad.weighted() {
                if w == ZERO {
                    continue;
                }
                let ph: Vec<C64> = e.iter().map(|&v| C64::from_polar(1.0, -r * v)).collect();
                let mut yr = ye.clone();
                for ((a, c), z) in yr.indexed_iter_mut() {
                    *z *= ph[a] * ph[c].conj();
                }
                let mut m = yr.dot(&xe);
                for ((_, b), z) in m.indexed_iter_mut() {
                    *z *= ph[b] * w;
                }
                out += &m;
            }
        }
    }
    Ok(out)
}

/// `K_f = [2 K.lo - b_f, 2 K.hi - a_f]`, the energies that can reach `K` from `K` through `f`.
pub fn kf_window(k: &EnergyWindow, support: (f64, f64)) -> Result<EnergyWindow, FilterError> {
    Ok(EnergyWindow::closed(2.0 * k.lo - support.1, 2.0 * k.hi - support.0)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InsertionResult {
    /// Largest entry of the difference of the two sides.
    pub residual: f64,
    /// Largest entry of the unrestricted side.
    pub magnitude: f64,
    pub kf: EnergyWindow,
}

/// Largest entry of `P_E Y (1 - P_{K_f}) f(E + E' - H) X P_{E'}` over eigenvalues `E, E'` in `K`,
/// computed as the difference of the unrestricted and the `K_f`-restricted sums.
pub fn insertion_check(
    sd: &SpectralData,
    x: &BlockOperator,
    y: &BlockOperator,
    filter: &Filter,
    k: &EnergyWindow,
) -> Result<InsertionResult, FilterError> {
    let full = full_basis(sd)?;
    let kb = WindowBasis::new(sd, *k)?;
    let kf = kf_window(k, filter.support())?;
    if kb.dim() == 0 {
        return Ok(InsertionResult { residual: 0.0, magnitude: 0.0, kf });
    }
    let ek = kb.energies();
    let e = full.energies();
    let y_kc = kb.cross(y, &full);
    let x_ck = full.cross(x, &kb);
    let all = triple(y_kc.view(), x_ck.view(), &ek, &e, &ek, |_| true, |v| filter.eval(v));
    let inserted = triple(y_kc.view(), x_ck.view(), &ek, &e, &ek, |c| kf.contains(e[c]), |v| filter.eval(v));
    let largest = |m: &Array2<C64>| m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(InsertionResult { residual: largest(&(&all - &inserted)), magnitude: largest(&all), kf })
}
