//! Delocalization witnesses built from `σ^x_i P₀ σ^x_j`.
//!
//! `σ^x_i ψ₀ = δ_i` lies in the one-magnon sector, so every quantity here only
//! needs the one-magnon eigenpairs.

use ndarray::{Array2, ArrayView2};
use spectral::{EnergyWindow, SpectralData};
use spin_core::C64;

use crate::error::{DiagnosticsError, Result};

/// Eigenpairs of the one-magnon block; row `k` of `vectors` is site `k - L`.
#[derive(Debug, Clone)]
pub struct OneMagnon {
    l: usize,
    energies: Vec<f64>,
    vectors: Array2<f64>,
}

impl OneMagnon {
    pub fn new(l: usize, energies: Vec<f64>, vectors: Array2<f64>) -> Result<Self> {
        let n = 2 * l + 1;
        if vectors.dim() != (n, energies.len()) {
            return Err(DiagnosticsError::InvalidInput(format!(
                "one-magnon eigenvectors have shape {:?}, expected ({n}, {})",
                vectors.dim(),
                energies.len()
            )));
        }
        Ok(Self { l, energies, vectors })
    }

    /// Sector 1 of a spectrum in which that sector is complete.
    pub fn from_spectrum(sd: &SpectralData, l: usize) -> Result<Self> {
        let s = sd.sector(1);
        if !s.complete {
            return Err(DiagnosticsError::IncompleteSpectrum);
        }
        Self::new(l, s.values.clone(), s.vectors.clone())
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    fn row(&self, site: i64) -> Result<usize> {
        let k = site + self.l as i64;
        if k < 0 || k > 2 * self.l as i64 {
            return Err(DiagnosticsError::InvalidInput(format!("site {site} outside [-{0}, {0}]", self.l)));
        }
        Ok(k as usize)
    }

    /// Energies in `K` and the amplitudes `ψ_E(i)`, `ψ_E(j)`.
    fn amplitudes(&self, i: i64, j: i64, k: &EnergyWindow) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
        let (ri, rj) = (self.row(i)?, self.row(j)?);
        let mut e = Vec::new();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (c, &en) in self.energies.iter().enumerate() {
            if k.contains(en) {
                e.push(en);
                a.push(self.vectors[[ri, c]]);
                b.push(self.vectors[[rj, c]]);
            }
        }
        Ok((e, a, b))
    }
}

/// Almost-sure spectrum `[1 - 1/Δ, 1 + 1/Δ]` of the clean one-magnon band.
pub fn clean_band(delta: f64) -> (f64, f64) {
    (1.0 - 1.0 / delta, 1.0 + 1.0 / delta)
}

/// The clean band shifted by potentials `λω` with `ω ∈ [0, 1]`.
pub fn disordered_band(delta: f64, lambda: f64) -> (f64, f64) {
    (1.0 - 1.0 / delta, 1.0 + 1.0 / delta + lambda.abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelocWitness {
    /// `‖(σ^x_i P₀ σ^x_j)_K‖ = ‖P_K δ_i‖ ‖P_K δ_j‖`
    pub product: f64,
    /// `‖(σ^x_i P₀ σ^x_j + σ^x_j P₀ σ^x_i)_K‖₂²`
    pub plus_sq: f64,
    /// `‖(σ^x_i P₀ σ^x_j - σ^x_j P₀ σ^x_i)_K‖₂²`
    pub minus_sq: f64,
    /// `lim (1/T) ∫₀ᵀ ‖(A(t) - A(t)^*)_K‖₂² dt = 2‖A_K‖₂²`
    pub cesaro_limit: f64,
    /// The same average at finite `T` by Simpson quadrature; `None` when no horizon was requested.
    pub cesaro_finite: Option<f64>,
}

/// Largest step of the Cesàro quadrature.
const CESARO_DT: f64 = 0.05;

pub fn deloc_witness(
    om: &OneMagnon,
    i: i64,
    j: i64,
    k: &EnergyWindow,
    band: (f64, f64),
    horizon: Option<f64>,
) -> Result<DelocWitness> {
    if k.contains(0.0) {
        return Err(DiagnosticsError::InvalidWindow(format!(
            "window {k} contains 0; the time average does not reduce to 2‖A_K‖₂²"
        )));
    }
    let slack = k.tol * band.1.abs().max(1.0);
    if k.lo < band.0 - slack || k.hi > band.1 + slack {
        return Err(DiagnosticsError::InvalidWindow(format!(
            "window {k} leaves the one-magnon band [{}, {}]",
            band.0, band.1
        )));
    }
    let (e, a, b) = om.amplitudes(i, j, k)?;
    let na: f64 = a.iter().map(|x| x * x).sum();
    let nb: f64 = b.iter().map(|x| x * x).sum();
    let ab: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
    let m = Array2::from_shape_fn((e.len(), e.len()), |(p, q)| a[p] * b[q] + b[p] * a[q]);
    let a_sq: f64 = m.iter().map(|x| x * x).sum();
    let cesaro_finite = match horizon {
        Some(t) if !(t > 0.0) => {
            return Err(DiagnosticsError::InvalidInput(format!("horizon {t} must be positive")));
        }
        Some(t) => Some(finite_average(&e, m.view(), a_sq, t)),
        None => None,
    };
    Ok(DelocWitness {
        product: (na * nb).sqrt(),
        plus_sq: 2.0 * (na * nb + ab * ab),
        minus_sq: (2.0 * (na * nb - ab * ab)).max(0.0),
        cesaro_limit: 2.0 * a_sq,
        cesaro_finite,
    })
}

/// `(1/T) ∫₀ᵀ (2‖A_K‖₂² - 2 Re Σ_{E,E'} e^{it(E+E')} M_{EE'}²) dt` by composite Simpson.
fn finite_average(e: &[f64], m: ArrayView2<f64>, a_sq: f64, t_max: f64) -> f64 {
    let mut freq = Vec::new();
    let mut weight = Vec::new();
    for (p, &ep) in e.iter().enumerate() {
        for (q, &eq) in e.iter().enumerate() {
            let w = m[[p, q]] * m[[p, q]];
            if w != 0.0 {
                freq.push(ep + eq);
                weight.push(w);
            }
        }
    }
    let top = freq.iter().fold(0.0f64, |acc, f| acc.max(f.abs()));
    let dt_max = if top > 0.0 { CESARO_DT.min(std::f64::consts::PI / (8.0 * top)) } else { CESARO_DT };
    let mut n = (t_max / dt_max).ceil() as usize;
    n += n % 2;
    let n = n.max(2);
    let dt = t_max / n as f64;
    let step: Vec<C64> = freq.iter().map(|f| C64::from_polar(1.0, f * dt)).collect();
    let mut z: Vec<C64> = vec![C64::new(1.0, 0.0); freq.len()];
    let mut acc = 0.0;
    for s in 0..=n {
        if s > 0 && s % 512 == 0 {
            for (zp, f) in z.iter_mut().zip(&freq) {
                *zp = C64::from_polar(1.0, f * dt * s as f64);
            }
        }
        let osc: f64 = z.iter().zip(&weight).map(|(zp, w)| zp.re * w).sum();
        let value = 2.0 * a_sq - 2.0 * osc;
        let c = if s == 0 || s == n {
            1.0
        } else if s % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += c * value;
        for (zp, st) in z.iter_mut().zip(&step) {
            *zp *= st;
        }
    }
    acc * dt / 3.0 / t_max
}
