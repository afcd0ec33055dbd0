//! The projections `P_±^(S)`, the `P_±` block decomposition of observables and
//! the compression onto a sub-interval with the complement frozen in the all-up state.

use ndarray::Array2;
use sprs::{CsMat, TriMat};

use crate::basis::Chain;
use crate::block::{Block, BlockOperator};
use crate::error::Result;
use crate::observable::{embed_local, Observable};
use crate::support::Support;
use crate::C64;

/// Local matrices are kept for supports up to this many sites.
const LOCAL_SITES_MAX: usize = 10;

/// Diagonal operator with entry 1 on configurations satisfying `keep`.
pub fn diagonal_projector(chain: &Chain, keep: impl Fn(u64) -> bool) -> BlockOperator {
    let mut op = BlockOperator::zeros_on(chain);
    for n in 0..chain.n_sectors() {
        let basis = chain.sector(n);
        let mut tri = TriMat::new((basis.dim(), basis.dim()));
        let mut any = false;
        for (i, &c) in basis.states.iter().enumerate() {
            if keep(c) {
                tri.add_triplet(i, i, C64::new(1.0, 0.0));
                any = true;
            }
        }
        if any {
            op.insert(n, n, Block::Sparse(tri.to_csr())).expect("diagonal block shape");
        }
    }
    op
}

/// `P_+^(S)`: all spins in the bit set `mask` point up. Works for arbitrary site sets.
pub fn plus_projector_sites(chain: &Chain, mask: u64) -> BlockOperator {
    diagonal_projector(chain, |c| c & mask == 0)
}

/// `P_-^(S) = 1 - P_+^(S)` for an arbitrary site set.
pub fn minus_projector_sites(chain: &Chain, mask: u64) -> BlockOperator {
    diagonal_projector(chain, |c| c & mask != 0)
}

fn local_plus(m: usize) -> Array2<C64> {
    let mut p = Array2::zeros((1 << m, 1 << m));
    p[[0, 0]] = C64::new(1.0, 0.0);
    p
}

pub fn plus_projector(chain: &Chain, s: Support) -> Result<Observable> {
    s.check_in_chain(chain.l())?;
    let op = plus_projector_sites(chain, s.mask(chain.l()));
    let local = (s.len() <= LOCAL_SITES_MAX).then(|| local_plus(s.len()));
    Ok(Observable { op, support: s, local })
}

pub fn minus_projector(chain: &Chain, s: Support) -> Result<Observable> {
    s.check_in_chain(chain.l())?;
    let op = minus_projector_sites(chain, s.mask(chain.l()));
    let local = (s.len() <= LOCAL_SITES_MAX).then(|| Array2::eye(1 << s.len()) - local_plus(s.len()));
    Ok(Observable { op, support: s, local })
}

/// Rank-one projection onto the all-up state.
pub fn ground_projector(chain: &Chain) -> BlockOperator {
    let mut op = BlockOperator::zeros_on(chain);
    op.insert(0, 0, Block::Sparse(CsMat::eye(1))).expect("sector 0 is one-dimensional");
    op
}

/// `X = X^{++} + X^{+-} + X^{-+} + X^{--}` with `X^{++} = zeta P_+^(X)`.
#[derive(Debug, Clone)]
pub struct PMDecomposition {
    pub pp: Observable,
    pub pm: Observable,
    pub mp: Observable,
    pub mm: Observable,
    pub zeta: C64,
}

pub fn pm_decompose(chain: &Chain, x: &Observable) -> Result<PMDecomposition> {
    let s = x.support;
    if let Some(m) = &x.local {
        let p = local_plus(s.len());
        let q = Array2::eye(1 << s.len()) - &p;
        let part = |a: &Array2<C64>, b: &Array2<C64>| embed_local(chain, a.dot(m).dot(b).view(), s);
        return Ok(PMDecomposition {
            pp: part(&p, &p)?,
            pm: part(&p, &q)?,
            mp: part(&q, &p)?,
            mm: part(&q, &q)?,
            zeta: m[[0, 0]],
        });
    }
    let mask = s.mask(chain.l());
    let up = |c: u64| c & mask == 0;
    let down = |c: u64| c & mask != 0;
    let wrap = |op: BlockOperator| Observable { op, support: s, local: None };
    Ok(PMDecomposition {
        pp: wrap(x.op.masked(chain, up, up)),
        pm: wrap(x.op.masked(chain, up, down)),
        mp: wrap(x.op.masked(chain, down, up)),
        mm: wrap(x.op.masked(chain, down, down)),
        zeta: x.op.entry(0, 0, 0, 0),
    })
}

/// `Z̃ = 1_O ⊗ R Z T`, where `O` is the complement of `inner` and `R`, `T`
/// restrict to / extend by the all-up state on `O`.
///
/// Satisfies `P_+^(O) Z P_+^(O) = Z̃ P_+^(O) = P_+^(O) Z̃`.
pub fn compress(chain: &Chain, z: &BlockOperator, inner: Support) -> Result<Observable> {
    inner.check_in_chain(chain.l())?;
    let zhat = compressed_matrix(chain, z, inner)?;
    embed_local(chain, zhat.view(), inner)
}

/// The local matrix `Ẑ = R Z T` on the interval `inner`.
pub fn compressed_matrix(chain: &Chain, z: &BlockOperator, inner: Support) -> Result<Array2<C64>> {
    let shift = chain.bit(inner.s)?;
    let ld = 1usize << inner.len();
    let loc: Vec<(usize, usize)> = (0..ld).map(|a| chain.locate((a as u64) << shift)).collect();
    let mut zhat = Array2::zeros((ld, ld));
    for a in 0..ld {
        for b in 0..ld {
            let (na, ia) = loc[a];
            let (nb, ib) = loc[b];
            zhat[[a, b]] = z.entry(na, ia, nb, ib);
        }
    }
    Ok(zhat)
}
