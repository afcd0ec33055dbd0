use std::f64::consts::PI;

use spin_core::C64;

use crate::sampled::SampledFunction;

/// Samples of a transform on the symmetric uniform grid `t_k = -T + k dt`, integrated by the trapezoid rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    pub t_max: f64,
    pub dt: f64,
    pub values: Vec<C64>,
}

impl Quadrature {
    /// Sample `g` on `[-t_max, t_max]`; the step is shrunk so that it divides `2 t_max`.
    pub fn from_fn(t_max: f64, dt: f64, g: impl Fn(f64) -> C64) -> Self {
        assert!(t_max > 0.0 && dt > 0.0, "quadrature needs a positive range and step");
        let n = (2.0 * t_max / dt).ceil() as usize;
        let dt = 2.0 * t_max / n as f64;
        let values = (0..=n).map(|k| g(-t_max + k as f64 * dt)).collect();
        Self { t_max, dt, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn t(&self, k: usize) -> f64 {
        -self.t_max + k as f64 * self.dt
    }

    pub fn weight(&self, k: usize) -> f64 {
        if k == 0 || k + 1 == self.values.len() {
            0.5 * self.dt
        } else {
            self.dt
        }
    }

    /// `(t, w_k ĝ(t_k))` pairs.
    pub fn weighted(&self) -> impl Iterator<Item = (f64, C64)> + '_ {
        self.values.iter().enumerate().map(|(k, &v)| (self.t(k), v * self.weight(k)))
    }

    /// `∫ |ĝ|` by the same rule.
    pub fn l1(&self) -> f64 {
        self.weighted().map(|(_, v)| v.norm()).sum()
    }
}

/// `f̂(t) = (1/2π) ∫ e^{itx} f(x) dx` by the trapezoid rule on the sample grid.
pub fn fourier(f: &SampledFunction, ts: &[f64]) -> Vec<C64> {
    let n = f.len();
    ts.iter()
        .map(|&t| {
            if n == 0 {
                return C64::new(0.0, 0.0);
            }
            let mut acc = C64::new(0.0, 0.0);
            for (k, (x, v)) in f.points().enumerate() {
                if v == 0.0 {
                    continue;
                }
                let w = if k == 0 || k + 1 == n { 0.5 } else { 1.0 };
                acc += C64::from_polar(w * v, t * x);
            }
            acc * f.dx / (2.0 * PI)
        })
        .collect()
}

/// `f(x) = ∫ e^{-itx} f̂(t) dt` from quadrature samples.
pub fn inverse_fourier(q: &Quadrature, x: f64) -> C64 {
    q.weighted().map(|(t, v)| v * C64::from_polar(1.0, -t * x)).sum()
}
