use std::fmt;

use crate::error::SpectralError;

/// Energy interval with explicit endpoint closure and a relative membership tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyWindow {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub tol: f64,
}

pub const DEFAULT_TOL: f64 = 1e-12;

impl EnergyWindow {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self, SpectralError> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(SpectralError::InvalidWindow(format!("lo = {lo} exceeds hi = {hi}")));
        }
        Ok(Self { lo, hi, lo_closed, hi_closed, tol: DEFAULT_TOL })
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self, SpectralError> {
        Self::new(lo, hi, true, true)
    }

    /// `[lo, hi)`.
    pub fn half_open(lo: f64, hi: f64) -> Result<Self, SpectralError> {
        Self::new(lo, hi, true, false)
    }

    pub fn open(lo: f64, hi: f64) -> Result<Self, SpectralError> {
        Self::new(lo, hi, false, false)
    }

    pub fn everything() -> Self {
        Self { lo: f64::NEG_INFINITY, hi: f64::INFINITY, lo_closed: true, hi_closed: true, tol: DEFAULT_TOL }
    }

    /// Neighbourhood of zero that lies strictly below `gap`.
    pub fn below(gap: f64) -> Self {
        Self { lo: f64::NEG_INFINITY, hi: 0.5 * gap, lo_closed: true, hi_closed: false, tol: DEFAULT_TOL }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn slack(&self, bound: f64) -> f64 {
        if bound.is_finite() {
            self.tol * bound.abs().max(1.0)
        } else {
            0.0
        }
    }

    pub fn contains(&self, e: f64) -> bool {
        let lo_ok = if self.lo_closed { e >= self.lo - self.slack(self.lo) } else { e > self.lo + self.slack(self.lo) };
        let hi_ok = if self.hi_closed { e <= self.hi + self.slack(self.hi) } else { e < self.hi - self.slack(self.hi) };
        lo_ok && hi_ok
    }

    /// Largest energy that could belong to the window.
    pub fn reach(&self) -> f64 {
        self.hi + self.slack(self.hi)
    }

    pub fn contains_window(&self, other: &EnergyWindow) -> bool {
        let lo_ok = other.lo > self.lo || (other.lo == self.lo && (self.lo_closed || !other.lo_closed));
        let hi_ok = other.hi < self.hi || (other.hi == self.hi && (self.hi_closed || !other.hi_closed));
        lo_ok && hi_ok
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi && !(self.lo_closed && self.hi_closed)
    }
}

impl fmt::Display for EnergyWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Droplet window `[1 - 1/Δ, (2 - δ)(1 - 1/Δ)]`; with `closed_hi = false` the upper end is open.
pub fn droplet_window(delta: f64, delta_param: f64, closed_hi: bool) -> Result<EnergyWindow, SpectralError> {
    if !(delta > 1.0) {
        return Err(SpectralError::InvalidWindow(format!("anisotropy {delta} must exceed 1")));
    }
    if !(0.0..1.0).contains(&delta_param) {
        return Err(SpectralError::InvalidWindow(format!("delta parameter {delta_param} outside [0, 1)")));
    }
    let theta0 = 1.0 - 1.0 / delta;
    EnergyWindow::new(theta0, (2.0 - delta_param) * theta0, true, closed_hi)
}
