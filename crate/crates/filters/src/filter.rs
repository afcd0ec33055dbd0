use std::f64::consts::PI;

use spin_core::C64;

use crate::bump::{gevrey_bump, Bump};
use crate::error::FilterError;
use crate::fourier::Quadrature;
use crate::sampled::SampledFunction;

pub const DEFAULT_POINTS_PER_UNIT: f64 = 2048.0;

/// Thresholds of the smooth step filter: `f = 0` below `theta2`, rises on
/// `[theta2, theta1]`, equals one on `[theta1, theta3]` and falls back to zero
/// on `[theta3, theta3 + theta1 - theta2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSpec {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
    pub alpha: f64,
    pub points_per_unit: f64,
}

impl Default for FilterSpec {
    fn default() -> Self {
        Self { theta1: 1.0, theta2: 0.5, theta3: 2.0, alpha: 0.5, points_per_unit: DEFAULT_POINTS_PER_UNIT }
    }
}

impl FilterSpec {
    pub fn new(theta1: f64, theta2: f64, theta3: f64, alpha: f64) -> Self {
        Self { theta1, theta2, theta3, alpha, points_per_unit: DEFAULT_POINTS_PER_UNIT }
    }

    pub fn validate(&self) -> Result<(), FilterError> {
        if !(self.theta2 < self.theta1 && self.theta1 <= self.theta3) {
            return Err(FilterError::InvalidSpec(format!(
                "thresholds must satisfy theta2 < theta1 <= theta3, got {}, {}, {}",
                self.theta2, self.theta1, self.theta3
            )));
        }
        if !(self.theta3.is_finite() && self.theta2.is_finite()) {
            return Err(FilterError::InvalidSpec("thresholds must be finite".into()));
        }
        Ok(())
    }

    /// Bump exponent `s = α/(1-α)`.
    pub fn s(&self) -> f64 {
        self.alpha / (1.0 - self.alpha)
    }

    pub fn rise(&self) -> f64 {
        self.theta1 - self.theta2
    }

    pub fn support(&self) -> (f64, f64) {
        (self.theta2, self.theta3 + self.rise())
    }
}

/// `f(x) = k(x - Θ₂) - k(x - Θ₃)` with `k` the antiderivative of a Gevrey bump on `[0, Θ₁ - Θ₂]`.
#[derive(Debug, Clone)]
pub struct Filter {
    pub spec: FilterSpec,
    pub bump: Bump,
}

pub fn filter_f(spec: FilterSpec) -> Result<Filter, FilterError> {
    Filter::new(spec)
}

impl Filter {
    pub fn new(spec: FilterSpec) -> Result<Self, FilterError> {
        spec.validate()?;
        let bump = gevrey_bump(spec.rise(), spec.alpha, spec.points_per_unit)?;
        Ok(Self { spec, bump })
    }

    pub fn support(&self) -> (f64, f64) {
        self.spec.support()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.bump.k(x - self.spec.theta2) - self.bump.k(x - self.spec.theta3)
    }

    /// `f` on the uniform grid spanning its support.
    pub fn sampled(&self) -> SampledFunction {
        let (a, b) = self.support();
        let n = ((b - a) * self.spec.points_per_unit).ceil().max(1.0) as usize;
        let dx = (b - a) / n as f64;
        let values = (0..=n).map(|k| self.eval(a + k as f64 * dx)).collect();
        SampledFunction::new(a, dx, values, (a, b))
    }

    /// `f̂(t) = e^{itc} (2 sin(tD/2)/t) ĥ(t)` with `c = (Θ₂+Θ₃)/2`, `D = Θ₃ - Θ₂`,
    /// obtained from `f' = h(· - Θ₂) - h(· - Θ₃)`.
    pub fn fhat(&self, t: f64) -> C64 {
        let d = self.spec.theta3 - self.spec.theta2;
        let c = 0.5 * (self.spec.theta2 + self.spec.theta3);
        let half = 0.5 * t * d;
        let sinc = if half.abs() < 1e-8 { d * (1.0 - half * half / 6.0) } else { 2.0 * half.sin() / t };
        if t == 0.0 {
            return C64::new(d / (2.0 * PI), 0.0);
        }
        C64::from_polar(sinc, t * c) * self.bump.fourier(t)
    }

    /// `f̂` sampled for quadrature on `[-t_max, t_max]`.
    pub fn fhat_quadrature(&self, t_max: f64, dt: f64) -> Quadrature {
        let mut q = Quadrature::from_fn(t_max, dt, |_| C64::new(0.0, 0.0));
        let m = q.len();
        // f is real, so f̂(-t) is the conjugate of f̂(t)
        for k in m / 2..m {
            let v = self.fhat(q.t(k).max(0.0));
            q.values[k] = v;
            q.values[m - 1 - k] = v.conj();
        }
        q
    }

    /// Range past which `|ĥ|` stays below `floor`, found by scanning blocks of
    /// width `2π/θ` on a doubling grid.
    pub fn decay_horizon(&self, floor: f64) -> f64 {
        self.bump.decay_horizon(floor)
    }

    /// `‖f̂‖₁`, integrating until `|ĥ|` falls below `1e-10` with a step resolving the `sin(tD/2)` factor.
    pub fn fhat_l1(&self) -> f64 {
        let d = self.spec.theta3 - self.spec.theta2;
        let t_max = self.decay_horizon(1e-10);
        let dt = (2.0 * PI / (24.0 * d.max(1.0))).min(0.05);
        let n = (t_max / dt).ceil() as usize;
        let dt = t_max / n as f64;
        let mut acc = 0.0;
        for k in 0..=n {
            let w = if k == 0 || k == n { 0.5 } else { 1.0 };
            acc += w * self.fhat(k as f64 * dt).norm();
        }
        2.0 * acc * dt
    }
}

pub(crate) fn horizon(bump: &Bump, floor: f64) -> f64 {
    let width = 2.0 * PI / bump.theta;
    let nyquist = 0.5 * PI / bump.dx();
    let block_max = |a: f64| (0..=16).map(|k| bump.fourier(a + width * k as f64 / 16.0).norm()).fold(0.0, f64::max);
    let mut t = width;
    while t < nyquist {
        if block_max(t) < floor && block_max(1.5 * t) < floor {
            return t;
        }
        t *= 1.5;
    }
    nyquist
}
