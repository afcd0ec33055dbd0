#![allow(dead_code)]

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin_core::{local, Chain, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Array2<C64> {
    Array2::from_shape_fn((n, n), |_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Dense matrix of `m` acting on sites `s..s+len` in the integer configuration order,
/// built from Kronecker products with identities.
pub fn kron_embed(chain: &Chain, m: &Array2<C64>, s: i64, len: usize) -> Array2<C64> {
    let n = chain.n_sites();
    let k0 = (s + chain.l() as i64) as usize;
    let mut acc: Array2<C64> = Array2::eye(1 << k0);
    acc = local::kron_low(&acc, m);
    let rest = n - k0 - len;
    local::kron_low(&acc, &Array2::eye(1 << rest))
}

/// Reorder an integer-ordered dense matrix into the sector-major ordering.
pub fn to_sector_major(chain: &Chain, a: &Array2<C64>) -> Array2<C64> {
    let dim = chain.total_dim();
    let mut perm = vec![0usize; dim];
    for c in 0..dim as u64 {
        perm[chain.global_index(c)] = c as usize;
    }
    Array2::from_shape_fn((dim, dim), |(i, j)| a[[perm[i], perm[j]]])
}

pub fn max_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    spin_core::linalg::max_abs_diff(a.view(), b.view())
}
