#![allow(dead_code)]

use hamiltonian::{build, sample_disorder, ChainParams, DisorderRealization, DisorderSpec};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral::{EnergyWindow, WindowBasis};
use spin_core::linalg::{sym_eig, EigRange};
use spin_core::{embed_local, BlockOperator, Chain, Observable, Support, C64};

pub struct Setup {
    pub chain: Chain,
    pub params: ChainParams,
    pub omega: DisorderRealization,
    pub h: BlockOperator,
}

pub fn setup(l: usize, delta: f64, lambda: f64, seed: u64, index: u64) -> Setup {
    let chain = Chain::new(l).unwrap();
    let params = ChainParams::new(delta, lambda, None, l, DisorderSpec::uniform(seed)).unwrap();
    let omega = sample_disorder(&params.disorder, l, index).unwrap();
    let h = build(&chain, &params, &omega).unwrap();
    Setup { chain, params, omega, h }
}

pub fn random_local(chain: &Chain, seed: u64, s: i64, len: usize) -> Observable {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let n = 1 << len;
    let m = Array2::from_shape_fn((n, n), |_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
    embed_local(chain, m.view(), Support::new(s, s + len as i64 - 1).unwrap()).unwrap()
}

pub fn adj(a: &Array2<C64>) -> Array2<C64> {
    a.t().mapv(|z| z.conj())
}

pub fn max_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    spin_core::linalg::max_abs_diff(a.view(), b.view())
}

/// Dense eigen-decomposition of the whole Hamiltonian, independent of the sector code.
pub struct Dense {
    pub w: Vec<f64>,
    pub v: Array2<C64>,
}

impl Dense {
    pub fn new(h: &BlockOperator) -> Self {
        let d = h.to_dense().mapv(|z| z.re);
        let (w, v) = sym_eig(d.view(), EigRange::All, true).unwrap();
        Self { w, v: v.unwrap().mapv(|x| C64::new(x, 0.0)) }
    }

    pub fn function(&self, g: impl Fn(f64) -> C64) -> Array2<C64> {
        let mut vd = self.v.clone();
        for ((_, c), z) in vd.indexed_iter_mut() {
            *z *= g(self.w[c]);
        }
        vd.dot(&adj(&self.v))
    }

    pub fn projector(&self, w: &EnergyWindow) -> Array2<C64> {
        self.function(|e| C64::new(if w.contains(e) { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn unitary(&self, t: f64) -> Array2<C64> {
        self.function(|e| C64::from_polar(1.0, t * e))
    }

    /// `e^{itH_B} = 1 - P_B + P_B e^{itH}`.
    pub fn truncated_unitary(&self, t: f64, b: &EnergyWindow) -> Array2<C64> {
        self.function(|e| if b.contains(e) { C64::from_polar(1.0, t * e) } else { C64::new(1.0, 0.0) })
    }
}

/// `V M V^*` for a window-basis matrix.
pub fn expand(basis: &WindowBasis, m: &Array2<C64>) -> Array2<C64> {
    let v = basis.columns().to_dense();
    v.dot(m).dot(&adj(&v))
}

pub fn ground_projector_dense(n: usize) -> Array2<C64> {
    let mut p = Array2::zeros((n, n));
    p[[0, 0]] = C64::new(1.0, 0.0);
    p
}
