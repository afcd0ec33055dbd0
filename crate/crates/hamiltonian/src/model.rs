use ndarray::Array2;
use sprs::TriMat;

use spin_core::{local, Block, BlockOperator, Chain, C64};

use crate::disorder::{DisorderRealization, DisorderSpec};
use crate::error::HamError;

/// Bottom of the droplet band, `1 - 1/Δ`.
pub fn theta0(delta: f64) -> f64 {
    1.0 - 1.0 / delta
}

#[derive(Debug, Clone)]
pub struct ChainParams {
    pub delta: f64,
    pub lambda: f64,
    pub beta: f64,
    pub l: usize,
    pub disorder: DisorderSpec,
}

impl ChainParams {
    /// Validated parameters; `beta = None` selects the gap-preserving minimum `(1 - 1/Δ)/2`.
    pub fn new(delta: f64, lambda: f64, beta: Option<f64>, l: usize, disorder: DisorderSpec) -> Result<Self, HamError> {
        let p = Self { delta, lambda, beta: beta.unwrap_or(0.5 * theta0(delta)), l, disorder };
        p.validate(true)?;
        Ok(p)
    }

    /// Check parameter ranges; with `enforce_gap` also require `beta >= (1 - 1/Δ)/2`.
    pub fn validate(&self, enforce_gap: bool) -> Result<(), HamError> {
        if !(self.delta > 1.0) || !self.delta.is_finite() {
            return Err(HamError::InvalidDelta(self.delta));
        }
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(HamError::NegativeLambda(self.lambda));
        }
        if self.l == 0 {
            return Err(spin_core::CoreError::ZeroLength.into());
        }
        let min = 0.5 * theta0(self.delta);
        if enforce_gap && self.beta < min - 1e-15 {
            return Err(HamError::BetaBelowGap { beta: self.beta, min });
        }
        Ok(())
    }

    pub fn theta0(&self) -> f64 {
        theta0(self.delta)
    }

    pub fn n_sites(&self) -> usize {
        2 * self.l + 1
    }

    /// `½(1 + 1/Δ) + 2λ + β`, the local-norm constant entering the Fermi-projection bound.
    pub fn fermi_theta(&self) -> f64 {
        0.5 * (1.0 + 1.0 / self.delta) + 2.0 * self.lambda + self.beta
    }
}

/// The 4x4 nearest-neighbour term; local index `b_i + 2 b_{i+1}` with `b = 1` for down.
pub fn local_term(delta: f64) -> Result<Array2<f64>, HamError> {
    if !(delta > 1.0) {
        return Err(HamError::InvalidDelta(delta));
    }
    let (sx, sy, sz) = (local::sigma_x(), local::sigma_y(), local::sigma_z());
    let one: Array2<C64> = Array2::eye(4);
    let zz = local::tensor(&[sz.clone(), sz]);
    let xx = local::tensor(&[sx.clone(), sx]);
    let yy = local::tensor(&[sy.clone(), sy]);
    let h = (one - zz).mapv(|z| z * 0.25) - (xx + yy).mapv(|z| z / (4.0 * delta));
    Ok(h.mapv(|z| z.re))
}

fn check(params: &ChainParams, omega: &DisorderRealization) -> Result<(), HamError> {
    params.validate(false)?;
    if omega.omega.len() != params.n_sites() {
        return Err(HamError::SizeMismatch { expected: params.n_sites(), got: omega.omega.len() });
    }
    Ok(())
}

/// Sector-diagonal sparse Hamiltonian of the chain `[-L, L]`.
pub fn build(chain: &Chain, params: &ChainParams, omega: &DisorderRealization) -> Result<BlockOperator, HamError> {
    check(params, omega)?;
    if chain.l() != params.l {
        return Err(HamError::SizeMismatch { expected: chain.n_sites(), got: params.n_sites() });
    }
    let n = params.n_sites();
    let hop = -1.0 / (2.0 * params.delta);
    let edges = 1u64 | (1u64 << (n - 1));
    let mut op = BlockOperator::zeros_on(chain);
    for sector in 0..chain.n_sectors() {
        let basis = chain.sector(sector);
        let mut tri = TriMat::new((basis.dim(), basis.dim()));
        for (j, &c) in basis.states.iter().enumerate() {
            let mut diag = params.beta * (c & edges).count_ones() as f64;
            for k in 0..n {
                if c >> k & 1 == 1 {
                    diag += params.lambda * omega.omega[k];
                }
            }
            for k in 0..n - 1 {
                if (c >> k & 1) != (c >> (k + 1) & 1) {
                    diag += 0.5;
                    let flipped = c ^ (3u64 << k);
                    let i = basis.index_of(flipped).expect("hopping conserves magnon number");
                    tri.add_triplet(i, j, C64::new(hop, 0.0));
                }
            }
            if diag != 0.0 {
                tri.add_triplet(j, j, C64::new(diag, 0.0));
            }
        }
        if tri.nnz() > 0 {
            op.insert(sector, sector, Block::Sparse(tri.to_csr()))?;
        }
    }
    Ok(op)
}

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    pub fn to_dense(&self) -> Array2<f64> {
        let n = self.diag.len();
        let mut a = Array2::zeros((n, n));
        for i in 0..n {
            a[[i, i]] = self.diag[i];
        }
        for (i, &v) in self.off.iter().enumerate() {
            a[[i, i + 1]] = v;
            a[[i + 1, i]] = v;
        }
        a
    }

    pub fn eigen(&self) -> Result<(Vec<f64>, Array2<f64>), HamError> {
        Ok(spin_core::linalg::tridiag_eig(&self.diag, &self.off)?)
    }
}

/// One-magnon restriction as an Anderson model on `[-L, L]`; row `k` is `delta_{k-L} = σ^x_{k-L} ψ_0`.
pub fn one_magnon_anderson(params: &ChainParams, omega: &DisorderRealization) -> Result<Tridiagonal, HamError> {
    check(params, omega)?;
    let n = params.n_sites();
    let mut diag: Vec<f64> = omega.omega.iter().map(|w| 1.0 + params.lambda * w).collect();
    for k in [0, n - 1] {
        diag[k] = 0.5 + params.beta + params.lambda * omega.omega[k];
    }
    Ok(Tridiagonal { diag, off: vec![-1.0 / (2.0 * params.delta); n - 1] })
}
