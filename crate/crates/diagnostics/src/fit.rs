use serde::{Deserialize, Serialize};

use crate::error::{DiagnosticsError, Result};
use crate::point::DiagnosticPoint;

/// Values at or below this are raised to it before taking logarithms.
pub const EPS_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum DecayModel {
    /// `C e^{-m x}`
    Exponential,
    /// `C e^{-m x^α}`
    Stretched { alpha: f64 },
}

impl DecayModel {
    fn transform(&self, x: f64) -> f64 {
        match *self {
            DecayModel::Exponential => x,
            DecayModel::Stretched { alpha } => x.powf(alpha),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub model: DecayModel,
    pub rate: f64,
    pub prefactor: f64,
    /// Fraction of the variance of `log(value)` explained by the slope; 0 for constant data.
    pub r_squared: f64,
    pub rate_stderr: f64,
    pub prefactor_stderr: f64,
    pub n_points: usize,
    pub n_floored: usize,
}

/// Least squares of `log(value) = log C - m x'`, with `x'` the abscissa or its power `α`.
pub fn fit_decay(points: &[DiagnosticPoint], model: DecayModel) -> Result<DecayFit> {
    let n = points.len();
    if n < 4 {
        return Err(DiagnosticsError::Fit(format!("{n} points, at least 4 needed")));
    }
    if let DecayModel::Stretched { alpha } = model {
        if !(alpha > 0.0) {
            return Err(DiagnosticsError::Fit(format!("stretch exponent {alpha} must be positive")));
        }
        if points.iter().any(|p| p.abscissa < 0.0) {
            return Err(DiagnosticsError::Fit("negative abscissa in a stretched fit".into()));
        }
    }
    let mut n_floored = 0;
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for p in points {
        if !p.value.is_finite() || !p.abscissa.is_finite() {
            return Err(DiagnosticsError::Fit(format!("non-finite point ({}, {})", p.abscissa, p.value)));
        }
        let v = if p.value <= EPS_FLOOR {
            n_floored += 1;
            EPS_FLOOR
        } else {
            p.value
        };
        xs.push(model.transform(p.abscissa));
        ys.push(v.ln());
    }
    if n_floored == n {
        return Err(DiagnosticsError::Fit("every value is at the floor".into()));
    }
    let nf = n as f64;
    let xm = xs.iter().sum::<f64>() / nf;
    let ym = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - xm).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(DiagnosticsError::Fit("all abscissae coincide".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let syy: f64 = ys.iter().map(|y| (y - ym).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let sse: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let r_squared = if syy > 0.0 { (1.0 - sse / syy).clamp(0.0, 1.0) } else { 0.0 };
    let s2 = sse / (nf - 2.0);
    let rate_stderr = (s2 / sxx).sqrt();
    let intercept_stderr = (s2 * (1.0 / nf + xm * xm / sxx)).sqrt();
    let prefactor = intercept.exp();
    Ok(DecayFit {
        model,
        rate: -slope,
        prefactor,
        r_squared,
        rate_stderr,
        prefactor_stderr: prefactor * intercept_stderr,
        n_points: n,
        n_floored,
    })
}
