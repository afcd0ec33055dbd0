use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::HamError;

/// Quantile function mapping a uniform draw in `[0, 1)` to a value in `[0, 1]`.
pub type Quantile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// Deterministic sequence `(seed, realization, site) -> omega`.
pub type Generator = Arc<dyn Fn(u64, u64, i64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum DisorderKind {
    Uniform01,
    /// i.i.d. draws pushed through a quantile function.
    IidDensity(Quantile),
    /// Arbitrary (for example ergodic) sequence supplied by the caller.
    ErgodicShift(Generator),
}

impl fmt::Debug for DisorderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DisorderKind::Uniform01 => write!(f, "Uniform01"),
            DisorderKind::IidDensity(_) => write!(f, "IidDensity(..)"),
            DisorderKind::ErgodicShift(_) => write!(f, "ErgodicShift(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DisorderSpec {
    pub kind: DisorderKind,
    pub seed: u64,
}

impl DisorderSpec {
    pub fn uniform(seed: u64) -> Self {
        Self { kind: DisorderKind::Uniform01, seed }
    }

    /// Every site gets the same value `c`.
    pub fn constant(c: f64) -> Self {
        Self { kind: DisorderKind::ErgodicShift(Arc::new(move |_, _, _| c)), seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisorderRealization {
    /// `omega[k]` belongs to site `k - L`.
    pub omega: Vec<f64>,
    pub seed: u64,
    pub index: u64,
}

impl DisorderRealization {
    pub fn from_values(omega: Vec<f64>) -> Self {
        Self { omega, seed: 0, index: 0 }
    }

    pub fn l(&self) -> usize {
        self.omega.len() / 2
    }
}

/// Each realization reads its own ChaCha stream and each site a fixed word
/// position, so a value does not depend on evaluation order.
pub fn sample_disorder(spec: &DisorderSpec, l: usize, index: u64) -> Result<DisorderRealization, HamError> {
    let n = 2 * l + 1;
    let mut omega = Vec::with_capacity(n);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index);
    for k in 0..n {
        let site = k as i64 - l as i64;
        let v = match &spec.kind {
            DisorderKind::Uniform01 => {
                rng.set_word_pos(2 * k as u128);
                rng.gen::<f64>()
            }
            DisorderKind::IidDensity(q) => {
                rng.set_word_pos(2 * k as u128);
                q(rng.gen::<f64>())
            }
            DisorderKind::ErgodicShift(g) => g(spec.seed, index, site),
        };
        if !(0.0..=1.0).contains(&v) {
            return Err(HamError::DisorderOutOfRange { site, value: v });
        }
        omega.push(v);
    }
    Ok(DisorderRealization { omega, seed: spec.seed, index })
}
