use ndarray::{Array2, ArrayView2};
use sprs::TriMat;

use crate::basis::Chain;
use crate::block::{Block, BlockOperator};
use crate::error::{CoreError, Result};
use crate::local;
use crate::support::Support;
use crate::C64;

/// A block operator together with its declared support.
///
/// When the observable was built from a local matrix, that matrix is kept in
/// `local` so that norms and the `P_±` decomposition stay cheap.
#[derive(Debug, Clone)]
pub struct Observable {
    pub op: BlockOperator,
    pub support: Support,
    pub local: Option<Array2<C64>>,
}

/// Embed a `2^|S| x 2^|S|` matrix acting on the interval `S` into the chain.
pub fn embed_local(chain: &Chain, matrix: ArrayView2<C64>, support: Support) -> Result<Observable> {
    support.check_in_chain(chain.l())?;
    let m = support.len();
    let ld = 1usize << m;
    if matrix.nrows() != ld || matrix.ncols() != ld {
        return Err(CoreError::Dimension { expected: ld, got: matrix.nrows().max(matrix.ncols()) });
    }
    let shift = chain.bit(support.s)?;
    let mask: u64 = ((ld as u64) - 1) << shift;
    // Nonzero entries of the local matrix grouped by column.
    let mut cols: Vec<Vec<(usize, C64)>> = vec![Vec::new(); ld];
    for ((i, j), &v) in matrix.indexed_iter() {
        if v != C64::new(0.0, 0.0) {
            cols[j].push((i, v));
        }
    }
    let dims = chain.dims();
    let ns = chain.n_sectors();
    let mut tris: Vec<Vec<Option<TriMat<C64>>>> = (0..ns).map(|_| (0..ns).map(|_| None).collect()).collect();
    for from in 0..ns {
        for (j, &c) in chain.sector(from).states.iter().enumerate() {
            let a = ((c & mask) >> shift) as usize;
            let rest = c & !mask;
            for &(b, v) in &cols[a] {
                let c2 = rest | ((b as u64) << shift);
                let (to, i) = chain.locate(c2);
                tris[to][from].get_or_insert_with(|| TriMat::new((dims[to], dims[from]))).add_triplet(i, j, v);
            }
        }
    }
    let mut op = BlockOperator::zeros(dims);
    for (to, row) in tris.into_iter().enumerate() {
        for (from, tri) in row.into_iter().enumerate() {
            if let Some(tri) = tri {
                op.insert(to, from, Block::Sparse(tri.to_csr()))?;
            }
        }
    }
    Ok(Observable { op, support, local: Some(matrix.to_owned()) })
}

impl Observable {
    pub fn new(op: BlockOperator, support: Support) -> Self {
        Self { op, support, local: None }
    }

    pub fn sigma_x(chain: &Chain, site: i64) -> Result<Self> {
        embed_local(chain, local::sigma_x().view(), Support::site(site))
    }

    pub fn sigma_y(chain: &Chain, site: i64) -> Result<Self> {
        embed_local(chain, local::sigma_y().view(), Support::site(site))
    }

    pub fn sigma_z(chain: &Chain, site: i64) -> Result<Self> {
        embed_local(chain, local::sigma_z().view(), Support::site(site))
    }

    /// Down-spin projection `N_i`.
    pub fn number(chain: &Chain, site: i64) -> Result<Self> {
        embed_local(chain, local::number().view(), Support::site(site))
    }

    pub fn identity(chain: &Chain) -> Self {
        Self {
            op: BlockOperator::identity_on(chain),
            support: Support::site(0),
            local: Some(local::identity(1)),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            op: self.op.adjoint(),
            support: self.support,
            local: self.local.as_ref().map(|m| m.t().mapv(|z| z.conj())),
        }
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self { op: self.op.scaled(c), support: self.support, local: self.local.as_ref().map(|m| m.mapv(|z| z * c)) }
    }

    /// Sum; the support is the hull of the two supports.
    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self { op: self.op.add(&other.op)?, support: self.support.hull(&other.support), local: None })
    }

    /// Product; the support is the hull of the two supports.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        Ok(Self { op: self.op.matmul(&other.op)?, support: self.support.hull(&other.support), local: None })
    }

    /// Operator norm, using the local matrix when available.
    pub fn op_norm(&self) -> f64 {
        match &self.local {
            Some(m) => crate::linalg::op_norm(m.view()),
            None => crate::norms::norm(&self.op, crate::norms::NormKind::Operator),
        }
    }

    /// Largest `|[X, U_j]|` entry over `U in {sigma_x, sigma_z}` and sites `j` outside the support.
    ///
    /// Zero iff the operator acts as the identity off its support, since these
    /// two matrices generate the full single-site algebra.
    pub fn identity_outside_support_defect(&self, chain: &Chain) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for j in chain.full_support().sites().filter(|j| !self.support.contains(*j)) {
            for u in [local::sigma_x(), local::sigma_z()] {
                let uj = embed_local(chain, u.view(), Support::site(j))?;
                let lhs = self.op.matmul(&uj.op)?;
                let rhs = uj.op.matmul(&self.op)?;
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        Ok(worst)
    }
}
