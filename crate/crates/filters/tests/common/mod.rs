#![allow(dead_code)]

use hamiltonian::{build, sample_disorder, ChainParams, DisorderSpec};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral::{diagonalize, SpectralData};
use spin_core::{embed_local, Chain, Observable, Support, C64};

pub fn spectrum(l: usize, delta: f64, lambda: f64, seed: u64, index: u64) -> (Chain, SpectralData) {
    let chain = Chain::new(l).unwrap();
    let params = ChainParams::new(delta, lambda, None, l, DisorderSpec::uniform(seed)).unwrap();
    let omega = sample_disorder(&params.disorder, l, index).unwrap();
    let h = build(&chain, &params, &omega).unwrap();
    let sd = diagonalize(&h).unwrap();
    (chain, sd)
}

pub fn random_local(chain: &Chain, seed: u64, s: i64, len: usize) -> Observable {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let n = 1 << len;
    let m = Array2::from_shape_fn((n, n), |_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
    embed_local(chain, m.view(), Support::new(s, s + len as i64 - 1).unwrap()).unwrap()
}

pub fn sigma_x_at(chain: &Chain, site: i64) -> Observable {
    embed_local(chain, spin_core::local::sigma_x().view(), Support::new(site, site).unwrap()).unwrap()
}

/// Composite Simpson rule on `[a, b]` with `n` (even) intervals.
pub fn simpson(g: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut acc = g(a) + g(b);
    for k in 1..n {
        acc += g(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}
