//! Single-site matrices in the basis `(e_+, e_-) = (up, down)`.

use ndarray::{array, Array2};

use crate::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn sigma_x() -> Array2<C64> {
    array![[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]]
}

pub fn sigma_y() -> Array2<C64> {
    array![[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]]
}

pub fn sigma_z() -> Array2<C64> {
    array![[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]]
}

/// Projection onto the down spin, `(1 - sigma_z) / 2`.
pub fn number() -> Array2<C64> {
    array![[c(0., 0.), c(0., 0.)], [c(0., 0.), c(1., 0.)]]
}

pub fn identity(n_sites: usize) -> Array2<C64> {
    Array2::eye(1 << n_sites)
}

/// Kronecker product with `a` acting on the lower bits: `(b ⊗ a)[(ib, ia), (jb, ja)]`.
///
/// With the little-endian local index convention, `kron_low(a, b)` places `a`
/// on the first (leftmost) sites and `b` on the following ones.
pub fn kron_low(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::zeros((ra * rb, ca * cb));
    for ib in 0..rb {
        for jb in 0..cb {
            let v = b[[ib, jb]];
            if v == C64::new(0.0, 0.0) {
                continue;
            }
            for ia in 0..ra {
                for ja in 0..ca {
                    out[[ib * ra + ia, jb * ca + ja]] = a[[ia, ja]] * v;
                }
            }
        }
    }
    out
}

/// Tensor product of single-site matrices listed from the left end of the support.
pub fn tensor(factors: &[Array2<C64>]) -> Array2<C64> {
    let mut acc: Array2<C64> = Array2::eye(1);
    for f in factors {
        acc = kron_low(&acc, f);
    }
    acc
}
