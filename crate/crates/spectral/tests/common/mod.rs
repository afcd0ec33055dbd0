#![allow(dead_code)]

use hamiltonian::{build, sample_disorder, ChainParams, DisorderRealization, DisorderSpec};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin_core::{BlockOperator, Chain, C64};

pub fn chain_h(l: usize, delta: f64, lambda: f64, seed: u64, index: u64) -> (Chain, ChainParams, DisorderRealization, BlockOperator) {
    let chain = Chain::new(l).unwrap();
    let p = ChainParams::new(delta, lambda, None, l, DisorderSpec::uniform(seed)).unwrap();
    let omega = sample_disorder(&p.disorder, l, index).unwrap();
    let h = build(&chain, &p, &omega).unwrap();
    (chain, p, omega, h)
}

pub fn random_dense(seed: u64, n: usize) -> Array2<C64> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    Array2::from_shape_fn((n, n), |_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
}

pub fn max_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    spin_core::linalg::max_abs_diff(a.view(), b.view())
}

/// Dense spectral projector onto eigenvalues accepted by `keep`, computed from the full dense matrix.
pub fn dense_projector(h: &BlockOperator, keep: impl Fn(f64) -> bool) -> Array2<C64> {
    let d = h.to_dense().mapv(|z| z.re);
    let (w, v) = spin_core::linalg::sym_eig(d.view(), spin_core::linalg::EigRange::All, true).unwrap();
    let v = v.unwrap();
    let n = d.nrows();
    let mut p = Array2::<f64>::zeros((n, n));
    for (k, &e) in w.iter().enumerate() {
        if keep(e) {
            let c = v.column(k);
            for i in 0..n {
                for j in 0..n {
                    p[[i, j]] += c[i] * c[j];
                }
            }
        }
    }
    p.mapv(|x| C64::new(x, 0.0))
}
