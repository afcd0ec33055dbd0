//! Magnon-sector resolved operators.

use std::collections::{BTreeMap, BTreeSet};

use ndarray::{s, Array2, ArrayView2, Axis};
use num_complex::Complex64;
use sprs::{CsMat, TriMat};

use crate::basis::Chain;
use crate::error::{CoreError, Result};
use crate::C64;

const ZERO: C64 = Complex64 { re: 0.0, im: 0.0 };

/// Storage for one `(sector_to, sector_from)` block.
#[derive(Debug, Clone)]
pub enum Block {
    Dense(Array2<C64>),
    Sparse(CsMat<C64>),
}

impl Block {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            Block::Dense(a) => a.dim(),
            Block::Sparse(m) => (m.rows(), m.cols()),
        }
    }

    pub fn to_dense(&self) -> Array2<C64> {
        match self {
            Block::Dense(a) => a.clone(),
            Block::Sparse(m) => {
                let mut out = Array2::zeros((m.rows(), m.cols()));
                for (i, row) in m.outer_iterator().enumerate() {
                    for (j, &v) in row.iter() {
                        out[[i, j]] += v;
                    }
                }
                out
            }
        }
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        match self {
            Block::Dense(a) => a[[i, j]],
            Block::Sparse(m) => m.get(i, j).copied().unwrap_or(ZERO),
        }
    }

    pub fn adjoint(&self) -> Block {
        match self {
            Block::Dense(a) => Block::Dense(a.t().mapv(|z| z.conj())),
            Block::Sparse(m) => {
                let mut tri = TriMat::new((m.cols(), m.rows()));
                for (i, row) in m.outer_iterator().enumerate() {
                    for (j, &v) in row.iter() {
                        tri.add_triplet(j, i, v.conj());
                    }
                }
                Block::Sparse(tri.to_csr())
            }
        }
    }

    pub fn scaled(&self, c: C64) -> Block {
        match self {
            Block::Dense(a) => Block::Dense(a.mapv(|z| z * c)),
            Block::Sparse(m) => Block::Sparse(m.map(|&z| z * c)),
        }
    }

    /// `self * x` for a dense right factor.
    pub fn dot_dense(&self, x: ArrayView2<C64>) -> Array2<C64> {
        match self {
            Block::Dense(a) => a.dot(&x),
            Block::Sparse(m) => {
                let mut out = Array2::zeros((m.rows(), x.ncols()));
                for (i, row) in m.outer_iterator().enumerate() {
                    let mut acc = out.row_mut(i);
                    for (j, &v) in row.iter() {
                        acc.scaled_add(v, &x.row(j));
                    }
                }
                out
            }
        }
    }

    pub fn matmul(&self, other: &Block) -> Block {
        match (self, other) {
            (Block::Sparse(a), Block::Sparse(b)) => {
                let mut tri = TriMat::new((a.rows(), b.cols()));
                for (i, row) in a.outer_iterator().enumerate() {
                    let mut acc: BTreeMap<usize, C64> = BTreeMap::new();
                    for (k, &va) in row.iter() {
                        if let Some(brow) = b.outer_view(k) {
                            for (j, &vb) in brow.iter() {
                                *acc.entry(j).or_insert(ZERO) += va * vb;
                            }
                        }
                    }
                    for (j, v) in acc {
                        if v != ZERO {
                            tri.add_triplet(i, j, v);
                        }
                    }
                }
                Block::Sparse(tri.to_csr())
            }
            (_, Block::Dense(b)) => Block::Dense(self.dot_dense(b.view())),
            (Block::Dense(a), Block::Sparse(_)) => {
                // (A B) = (B^* A^*)^*
                let prod = other.adjoint().dot_dense(a.t().mapv(|z| z.conj()).view());
                Block::Dense(prod.t().mapv(|z| z.conj()))
            }
        }
    }

    pub fn add(&self, other: &Block) -> Block {
        match (self, other) {
            (Block::Sparse(a), Block::Sparse(b)) => {
                let mut tri = TriMat::new((a.rows(), a.cols()));
                for m in [a, b] {
                    for (i, row) in m.outer_iterator().enumerate() {
                        for (j, &v) in row.iter() {
                            tri.add_triplet(i, j, v);
                        }
                    }
                }
                Block::Sparse(tri.to_csr())
            }
            _ => Block::Dense(self.to_dense() + other.to_dense()),
        }
    }

    pub fn max_abs(&self) -> f64 {
        match self {
            Block::Dense(a) => a.iter().map(|z| z.norm()).fold(0.0, f64::max),
            Block::Sparse(m) => m.data().iter().map(|z| z.norm()).fold(0.0, f64::max),
        }
    }

    pub fn frobenius_sq(&self) -> f64 {
        match self {
            Block::Dense(a) => a.iter().map(|z| z.norm_sqr()).sum(),
            Block::Sparse(m) => m.data().iter().map(|z| z.norm_sqr()).sum(),
        }
    }

    /// Gershgorin lower bound `min_i (Re a_ii - sum_{j != i} |a_ij|)` of a square block.
    pub fn gershgorin_lower(&self) -> f64 {
        let (n, _) = self.shape();
        let mut best = f64::INFINITY;
        match self {
            Block::Dense(a) => {
                for i in 0..n {
                    let off: f64 = (0..n).filter(|&j| j != i).map(|j| a[[i, j]].norm()).sum();
                    best = best.min(a[[i, i]].re - off);
                }
            }
            Block::Sparse(m) => {
                for (i, row) in m.outer_iterator().enumerate() {
                    let mut diag = 0.0;
                    let mut off = 0.0;
                    for (j, &v) in row.iter() {
                        if j == i {
                            diag += v.re;
                        } else {
                            off += v.norm();
                        }
                    }
                    best = best.min(diag - off);
                }
            }
        }
        best
    }

    /// Gershgorin upper bound of a square block.
    pub fn gershgorin_upper(&self) -> f64 {
        self.scaled(C64::new(-1.0, 0.0)).gershgorin_lower() * -1.0
    }

    pub fn is_real(&self, tol: f64) -> bool {
        match self {
            Block::Dense(a) => a.iter().all(|z| z.im.abs() <= tol),
            Block::Sparse(m) => m.data().iter().all(|z| z.im.abs() <= tol),
        }
    }
}

/// Operator stored as a map `(sector_to, sector_from) -> block`; absent blocks are zero.
#[derive(Debug, Clone)]
pub struct BlockOperator {
    dims: Vec<usize>,
    blocks: BTreeMap<(usize, usize), Block>,
}

impl BlockOperator {
    pub fn zeros(dims: Vec<usize>) -> Self {
        Self { dims, blocks: BTreeMap::new() }
    }

    pub fn zeros_on(chain: &Chain) -> Self {
        Self::zeros(chain.dims())
    }

    pub fn identity(dims: Vec<usize>) -> Self {
        let mut op = Self::zeros(dims.clone());
        for (n, &d) in dims.iter().enumerate() {
            op.blocks.insert((n, n), Block::Sparse(CsMat::eye(d)));
        }
        op
    }

    pub fn identity_on(chain: &Chain) -> Self {
        Self::identity(chain.dims())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_sectors(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn insert(&mut self, to: usize, from: usize, block: Block) -> Result<()> {
        let expected = (self.dims[to], self.dims[from]);
        if block.shape() != expected {
            return Err(CoreError::BlockShape { to, from, expected, got: block.shape() });
        }
        self.blocks.insert((to, from), block);
        Ok(())
    }

    /// Add `block` to whatever is stored at `(to, from)`.
    pub fn accumulate(&mut self, to: usize, from: usize, block: Block) -> Result<()> {
        let expected = (self.dims[to], self.dims[from]);
        if block.shape() != expected {
            return Err(CoreError::BlockShape { to, from, expected, got: block.shape() });
        }
        let merged = match self.blocks.remove(&(to, from)) {
            Some(old) => old.add(&block),
            None => block,
        };
        self.blocks.insert((to, from), merged);
        Ok(())
    }

    pub fn block(&self, to: usize, from: usize) -> Option<&Block> {
        self.blocks.get(&(to, from))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(usize, usize), &Block)> {
        self.blocks.iter()
    }

    pub fn block_keys(&self) -> Vec<(usize, usize)> {
        self.blocks.keys().copied().collect()
    }

    pub fn is_block_diagonal(&self) -> bool {
        self.blocks.keys().all(|(a, b)| a == b)
    }

    /// Matrix element between sector-local indices.
    pub fn entry(&self, to: usize, i: usize, from: usize, j: usize) -> C64 {
        self.blocks.get(&(to, from)).map(|b| b.get(i, j)).unwrap_or(ZERO)
    }

    pub fn adjoint(&self) -> Self {
        let blocks = self.blocks.iter().map(|(&(a, b), blk)| ((b, a), blk.adjoint())).collect();
        Self { dims: self.dims.clone(), blocks }
    }

    pub fn scaled(&self, c: C64) -> Self {
        let blocks = self.blocks.iter().map(|(&k, blk)| (k, blk.scaled(c))).collect();
        Self { dims: self.dims.clone(), blocks }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dims(other)?;
        let mut out = self.clone();
        for (&(a, b), blk) in &other.blocks {
            out.accumulate(a, b, blk.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(C64::new(-1.0, 0.0)))
    }

    /// Operator product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_dims(other)?;
        let mut out = Self::zeros(self.dims.clone());
        for (&(a, k), lhs) in &self.blocks {
            for (&(k2, b), rhs) in other.blocks.range((k, 0)..(k + 1, 0)) {
                debug_assert_eq!(k, k2);
                out.accumulate(a, b, lhs.matmul(rhs))?;
            }
        }
        Ok(out)
    }

    fn same_dims(&self, other: &Self) -> Result<()> {
        if self.dims != other.dims {
            return Err(CoreError::ChainMismatch);
        }
        Ok(())
    }

    /// Apply to a set of sector-resolved column vectors.
    pub fn apply(&self, x: &Columns) -> Columns {
        assert_eq!(self.dims, x.dims(), "operator and vectors live on different chains");
        let mut out = Columns::zeros(&self.dims, x.ncols());
        for (&(a, b), blk) in &self.blocks {
            if x.is_zero_part(b) {
                continue;
            }
            let y = blk.dot_dense(x.part(b));
            out.add_to_part(a, &y);
        }
        out
    }

    /// Dense matrix in the sector-major global ordering.
    pub fn to_dense(&self) -> Array2<C64> {
        let offs = offsets(&self.dims);
        let n = self.total_dim();
        let mut out = Array2::zeros((n, n));
        for (&(a, b), blk) in &self.blocks {
            let d = blk.to_dense();
            out.slice_mut(s![offs[a]..offs[a] + self.dims[a], offs[b]..offs[b] + self.dims[b]]).assign(&d);
        }
        out
    }

    /// Inverse of [`to_dense`](Self::to_dense); blocks with all entries below `tol` are dropped.
    pub fn from_dense(dims: Vec<usize>, a: ArrayView2<C64>, tol: f64) -> Result<Self> {
        let n: usize = dims.iter().sum();
        if a.dim() != (n, n) {
            return Err(CoreError::Dimension { expected: n, got: a.nrows() });
        }
        let offs = offsets(&dims);
        let mut out = Self::zeros(dims.clone());
        for x in 0..dims.len() {
            for y in 0..dims.len() {
                let blk = a.slice(s![offs[x]..offs[x] + dims[x], offs[y]..offs[y] + dims[y]]);
                if blk.iter().any(|z| z.norm() > tol) {
                    out.blocks.insert((x, y), Block::Dense(blk.to_owned()));
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise deviation between two operators.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        match self.sub(other) {
            Ok(d) => d.blocks.values().map(Block::max_abs).fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.values().map(Block::max_abs).fold(0.0, f64::max)
    }

    /// Keep only entries whose row and column configurations satisfy the predicates.
    pub fn masked(&self, chain: &Chain, rows: impl Fn(u64) -> bool, cols: impl Fn(u64) -> bool) -> Self {
        let mut out = Self::zeros(self.dims.clone());
        for (&(a, b), blk) in &self.blocks {
            let rs: Vec<bool> = chain.sector(a).states.iter().map(|&c| rows(c)).collect();
            let cs: Vec<bool> = chain.sector(b).states.iter().map(|&c| cols(c)).collect();
            let nb = match blk {
                Block::Dense(m) => {
                    let mut m = m.clone();
                    for ((i, j), z) in m.indexed_iter_mut() {
                        if !(rs[i] && cs[j]) {
                            *z = ZERO;
                        }
                    }
                    Block::Dense(m)
                }
                Block::Sparse(m) => {
                    let mut tri = TriMat::new((m.rows(), m.cols()));
                    for (i, row) in m.outer_iterator().enumerate() {
                        if !rs[i] {
                            continue;
                        }
                        for (j, &v) in row.iter() {
                            if cs[j] {
                                tri.add_triplet(i, j, v);
                            }
                        }
                    }
                    Block::Sparse(tri.to_csr())
                }
            };
            out.blocks.insert((a, b), nb);
        }
        out
    }

    /// Connected components of the bipartite block graph (row sectors, column sectors).
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.dims.len();
        // nodes 0..n are row sectors, n..2n column sectors
        let mut parent: Vec<usize> = (0..2 * n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for &(a, b) in self.blocks.keys() {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, n + b);
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut groups: BTreeMap<usize, (BTreeSet<usize>, BTreeSet<usize>)> = BTreeMap::new();
        for &(a, b) in self.blocks.keys() {
            let r = find(&mut parent, a);
            let g = groups.entry(r).or_default();
            g.0.insert(a);
            g.1.insert(b);
        }
        groups.into_values().map(|(r, c)| (r.into_iter().collect(), c.into_iter().collect())).collect()
    }

    /// Dense matrix of one component (rows then columns in the given sector order).
    pub fn component_dense(&self, rows: &[usize], cols: &[usize]) -> Array2<C64> {
        let nr: usize = rows.iter().map(|&a| self.dims[a]).sum();
        let nc: usize = cols.iter().map(|&b| self.dims[b]).sum();
        let mut out = Array2::zeros((nr, nc));
        let mut ro = 0;
        for &a in rows {
            let mut co = 0;
            for &b in cols {
                if let Some(blk) = self.blocks.get(&(a, b)) {
                    out.slice_mut(s![ro..ro + self.dims[a], co..co + self.dims[b]]).assign(&blk.to_dense());
                }
                co += self.dims[b];
            }
            ro += self.dims[a];
        }
        out
    }
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    dims.iter()
        .map(|&d| {
            let o = acc;
            acc += d;
            o
        })
        .collect()
}

/// A family of `k` vectors, stored sector by sector as `dim_N x k` matrices.
#[derive(Debug, Clone)]
pub struct Columns {
    parts: Vec<Array2<C64>>,
    zero: Vec<bool>,
    k: usize,
}

impl Columns {
    pub fn zeros(dims: &[usize], k: usize) -> Self {
        Self {
            parts: dims.iter().map(|&d| Array2::zeros((d, k))).collect(),
            zero: vec![true; dims.len()],
            k,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.nrows()).collect()
    }

    pub fn ncols(&self) -> usize {
        self.k
    }

    pub fn part(&self, n: usize) -> ArrayView2<'_, C64> {
        self.parts[n].view()
    }

    pub fn is_zero_part(&self, n: usize) -> bool {
        self.zero[n]
    }

    pub fn set_part(&mut self, n: usize, m: Array2<C64>) {
        assert_eq!(m.dim(), self.parts[n].dim());
        self.parts[n] = m;
        self.zero[n] = false;
    }

    pub fn add_to_part(&mut self, n: usize, m: &Array2<C64>) {
        self.parts[n] += m;
        self.zero[n] = false;
    }

    /// Set column `col` to the unit vector of `(sector, index)`.
    pub fn set_unit(&mut self, col: usize, sector: usize, index: usize, value: C64) {
        self.parts[sector][[index, col]] = value;
        self.zero[sector] = false;
    }

    /// Gram-type product `self^* other` (a `k x k'` matrix).
    pub fn inner(&self, other: &Columns) -> Array2<C64> {
        let mut out = Array2::zeros((self.k, other.k));
        for n in 0..self.parts.len() {
            if self.zero[n] || other.zero[n] {
                continue;
            }
            out += &self.parts[n].t().mapv(|z| z.conj()).dot(&other.parts[n]);
        }
        out
    }

    /// Euclidean norm of each column.
    pub fn column_norms(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.k];
        for (n, p) in self.parts.iter().enumerate() {
            if self.zero[n] {
                continue;
            }
            for (j, col) in p.axis_iter(Axis(1)).enumerate() {
                acc[j] += col.iter().map(|z| z.norm_sqr()).sum::<f64>();
            }
        }
        acc.into_iter().map(f64::sqrt).collect()
    }

    /// Keep only the listed columns, in order.
    pub fn select(&self, cols: &[usize]) -> Columns {
        Columns {
            parts: self.parts.iter().map(|p| p.select(Axis(1), cols)).collect(),
            zero: self.zero.clone(),
            k: cols.len(),
        }
    }

    /// Columns times a `k x k'` coefficient matrix.
    pub fn combine(&self, coeff: ArrayView2<C64>) -> Columns {
        assert_eq!(coeff.nrows(), self.k);
        Columns {
            parts: self.parts.iter().map(|p| p.dot(&coeff)).collect(),
            zero: self.zero.clone(),
            k: coeff.ncols(),
        }
    }

    /// Stack all sectors into one `total_dim x k` matrix in sector-major order.
    pub fn to_dense(&self) -> Array2<C64> {
        let views: Vec<_> = self.parts.iter().map(|p| p.view()).collect();
        ndarray::concatenate(Axis(0), &views).expect("consistent column counts")
    }
}
