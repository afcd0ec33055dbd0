use spin_core::C64;

use crate::error::FilterError;
use crate::sampled::SampledFunction;

/// `h(x) ∝ exp(-x^{-s} - (θ-x)^{-s})` on `(0, θ)` with `s = α/(1-α)`, normalized to unit mass.
///
/// Values and derivatives are kept at the nodes; the antiderivative `k` is the
/// exact integral of the cubic Hermite interpolant, so partial integrals are
/// fourth-order accurate.
#[derive(Debug, Clone)]
pub struct Bump {
    pub theta: f64,
    pub alpha: f64,
    pub h: SampledFunction,
    dh: Vec<f64>,
    cumulative: Vec<f64>,
}

pub const MIN_POINTS: usize = 64;

pub fn gevrey_bump(theta: f64, alpha: f64, points_per_unit: f64) -> Result<Bump, FilterError> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(FilterError::InvalidSpec(format!("support length {theta} must be positive")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(FilterError::InvalidSpec(format!("Gevrey exponent {alpha} outside (0, 1)")));
    }
    let n = (theta * points_per_unit).ceil() as usize;
    if n < MIN_POINTS {
        return Err(FilterError::GridTooCoarse { points: n });
    }
    let dx = theta / n as f64;
    let s = alpha / (1.0 - alpha);
    let log_h: Vec<f64> = (0..=n)
        .map(|k| {
            if k == 0 || k == n {
                f64::NEG_INFINITY
            } else {
                let x = k as f64 * dx;
                -x.powf(-s) - (theta - x).powf(-s)
            }
        })
        .collect();
    let peak = log_h.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut h: Vec<f64> = log_h.iter().map(|&l| (l - peak).exp()).collect();
    let mut dh: Vec<f64> = (0..=n)
        .map(|k| {
            if k == 0 || k == n {
                0.0
            } else {
                let x = k as f64 * dx;
                h[k] * (s * x.powf(-s - 1.0) - s * (theta - x).powf(-s - 1.0))
            }
        })
        .collect();
    let mut cumulative = vec![0.0; n + 1];
    for k in 0..n {
        let seg = dx * 0.5 * (h[k] + h[k + 1]) + dx * dx * (dh[k] - dh[k + 1]) / 12.0;
        cumulative[k + 1] = cumulative[k] + seg;
    }
    let mass = cumulative[n];
    for v in h.iter_mut().chain(dh.iter_mut()).chain(cumulative.iter_mut()) {
        *v /= mass;
    }
    cumulative[n] = 1.0;
    Ok(Bump { theta, alpha, h: SampledFunction::new(0.0, dx, h, (0.0, theta)), dh, cumulative })
}

impl Bump {
    pub fn dx(&self) -> f64 {
        self.h.dx
    }

    fn locate(&self, y: f64) -> (usize, f64) {
        let n = self.h.len() - 1;
        let k = ((y / self.dx()).floor() as usize).min(n - 1);
        (k, (y - k as f64 * self.dx()) / self.dx())
    }

    /// Cubic Hermite interpolation of `h`.
    pub fn eval(&self, y: f64) -> f64 {
        if y <= 0.0 || y >= self.theta {
            return 0.0;
        }
        let (k, u) = self.locate(y);
        let dx = self.dx();
        let (h0, h1, d0, d1) = (self.h.values[k], self.h.values[k + 1], self.dh[k], self.dh[k + 1]);
        let u2 = u * u;
        let u3 = u2 * u;
        h0 * (2.0 * u3 - 3.0 * u2 + 1.0) + dx * d0 * (u3 - 2.0 * u2 + u) + h1 * (3.0 * u2 - 2.0 * u3) + dx * d1 * (u3 - u2)
    }

    /// `k(y) = ∫_{-∞}^y h`.
    pub fn k(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        if y >= self.theta {
            return 1.0;
        }
        let (k, u) = self.locate(y);
        let dx = self.dx();
        let (h0, h1, d0, d1) = (self.h.values[k], self.h.values[k + 1], self.dh[k], self.dh[k + 1]);
        let (u2, u3, u4) = (u * u, u * u * u, u * u * u * u);
        let part = h0 * (0.5 * u4 - u3 + u)
            + dx * d0 * (0.25 * u4 - 2.0 * u3 / 3.0 + 0.5 * u2)
            + h1 * (u3 - 0.5 * u4)
            + dx * d1 * (0.25 * u4 - u3 / 3.0);
        (self.cumulative[k] + dx * part).clamp(0.0, 1.0)
    }

    /// Range past which `|ĥ|` stays below `floor`.
    pub fn decay_horizon(&self, floor: f64) -> f64 {
        crate::filter::horizon(self, floor)
    }

    /// `ĥ(t) = (1/2π) ∫ e^{itx} h(x) dx` by the trapezoid rule, which is
    /// spectrally accurate for a smooth function vanishing to all orders at its ends.
    pub fn fourier(&self, t: f64) -> C64 {
        let z = C64::from_polar(1.0, t * self.dx());
        let mut w = C64::new(1.0, 0.0);
        let mut acc = C64::new(0.0, 0.0);
        for (k, &v) in self.h.values.iter().enumerate() {
            acc += w * v;
            w *= z;
            if k % 64 == 63 {
                // keep the running phase on the unit circle
                w = C64::from_polar(1.0, t * self.dx() * (k + 1) as f64);
            }
        }
        acc * self.dx() / (2.0 * std::f64::consts::PI)
    }
}
