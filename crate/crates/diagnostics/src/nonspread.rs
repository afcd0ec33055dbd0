//! Local approximation of `τ_t(X)` inside `I₀`.
//!
//! With `O` the complement of `S_{ℓ/2}` and `T = S_ℓ ∩ O`, the approximant is
//! `X_ℓ(t) = P_+^(T) Z̃ + ζ_X`, where `Z = τ_t(X'_{I₀})`, `X' = X - ζ_X`, and
//! `Z̃ = 1_O ⊗ R Z T` freezes `O` in the all-up state.
//!
//! Everything is evaluated in the `I₀` eigenbasis `V`. Writing `B` for the rows
//! of `V` whose configuration has `O` all up (indexed by the inner bits) and
//! `A_o` for the rows with outer configuration `o` (and `T` up),
//! `V^* X_ℓ(t) V - ζ = Σ_o G_o^* M_t G_o` with `G_o = B^* A_o` and
//! `M_t = D V^* X' V D^*`.

use std::collections::BTreeMap;

use dynamics::{conjugate_phases, GridMax, TimeGrid};
use ndarray::{Array1, Array2};
use spectral::{EnergyWindow, SpectralData, WindowBasis};
use spin_core::linalg::trace_norm;
use spin_core::projector::plus_projector_sites;
use spin_core::{compress, pm_decompose, BlockOperator, Chain, Observable, Support, C64};

use crate::error::{DiagnosticsError, Result};

/// Sites involved in the construction for an observable supported on `support`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Regions {
    /// `S_{ℓ/2}`, the support of `Z̃`.
    pub inner: Support,
    /// `S_ℓ`, the support of `X_ℓ(t)`.
    pub outer: Support,
    /// Bit mask of `O`.
    pub o_mask: u64,
    /// Bit mask of `T`.
    pub t_mask: u64,
}

impl Regions {
    pub fn new(chain: &Chain, support: Support, ell: usize) -> Result<Self> {
        support.check_in_chain(chain.l())?;
        let l = chain.l();
        let inner = support.widen(ell as f64 / 2.0, l);
        let outer = support.widen(ell as f64, l);
        let full = chain.full_support().mask(l);
        let o_mask = full & !inner.mask(l);
        Ok(Self { inner, outer, o_mask, t_mask: outer.mask(l) & o_mask })
    }
}

/// Superoperator above `k⁴` entries beyond which the Kraus sum is applied directly.
const SUPEROP_MAX: usize = 1 << 22;

#[derive(Debug, Clone)]
enum Channel {
    /// `vec(W) = S vec(M)`, row-major `k² x k²`.
    Superop(Array2<C64>),
    Kraus(Vec<Array2<C64>>),
}

/// Everything about `(X, ℓ)` that does not depend on `t`.
#[derive(Debug, Clone)]
pub struct Nonspread {
    pub regions: Regions,
    pub zeta: C64,
    energies: Vec<f64>,
    m0: Array2<C64>,
    channel: Channel,
}

impl Nonspread {
    pub fn new(chain: &Chain, sd: &SpectralData, x: &Observable, ell: usize, i0: &EnergyWindow) -> Result<Self> {
        if ell == 0 {
            return Err(DiagnosticsError::InvalidInput("ℓ must be at least 1".into()));
        }
        let regions = Regions::new(chain, x.support, ell)?;
        let zeta = pm_decompose(chain, x)?.zeta;
        let xp = shifted(&x.op, zeta)?;
        let basis = WindowBasis::new(sd, *i0)?;
        let k = basis.dim();
        let v = basis.columns();
        let m0 = v.inner(&xp.apply(&v));

        let shift = chain.bit(regions.inner.s)?;
        let in_mask = regions.inner.mask(chain.l());
        let n_in = 1usize << regions.inner.len();
        let mut b = Array2::<C64>::zeros((n_in, k));
        for a in 0..n_in {
            let (n, idx) = chain.locate((a as u64) << shift);
            if !v.is_zero_part(n) {
                b.row_mut(a).assign(&v.part(n).row(idx));
            }
        }
        let mut groups: BTreeMap<u64, Vec<(usize, usize, usize)>> = BTreeMap::new();
        for n in 0..chain.n_sectors() {
            if v.is_zero_part(n) {
                continue;
            }
            for (idx, &c) in chain.sector(n).states.iter().enumerate() {
                if c & regions.t_mask == 0 {
                    groups.entry(c & regions.o_mask).or_default().push((((c & in_mask) >> shift) as usize, n, idx));
                }
            }
        }
        let bh = b.t().mapv(|z| z.conj());
        let kraus: Vec<Array2<C64>> = groups
            .values()
            .map(|rows| {
                let mut g = Array2::<C64>::zeros((k, k));
                for &(a, n, idx) in rows {
                    let part = v.part(n);
                    let vr = part.row(idx);
                    for p in 0..k {
                        let c = bh[[p, a]];
                        if c != C64::new(0.0, 0.0) {
                            g.row_mut(p).scaled_add(c, &vr);
                        }
                    }
                }
                g
            })
            .filter(|g| g.iter().any(|z| z.norm() > 0.0))
            .collect();
        let channel = if k * k * k * k <= SUPEROP_MAX && kraus.len() * 2 > k {
            Channel::Superop(superoperator(&kraus, k))
        } else {
            Channel::Kraus(kraus)
        };
        Ok(Self { regions, zeta, energies: basis.energies(), m0, channel })
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    fn apply(&self, m: &Array2<C64>) -> Array2<C64> {
        let k = self.dim();
        match &self.channel {
            Channel::Superop(s) => {
                let vm = Array1::from_iter(m.iter().copied());
                s.dot(&vm).into_shape((k, k)).expect("k x k")
            }
            Channel::Kraus(gs) => {
                let mut w = Array2::zeros((k, k));
                for g in gs {
                    w += &g.t().mapv(|z| z.conj()).dot(&m.dot(g));
                }
                w
            }
        }
    }

    /// `‖(X_ℓ(t) - τ_t(X))_{I₀}‖₁`.
    pub fn error(&self, t: f64) -> f64 {
        if self.dim() == 0 {
            return 0.0;
        }
        let mt = conjugate_phases(&self.m0, &self.energies, t);
        trace_norm((self.apply(&mt) - &mt).view())
    }

    pub fn sup(&self, grid: &TimeGrid) -> GridMax {
        grid.max_over::<std::convert::Infallible>(|t| Ok(self.error(t))).expect("infallible")
    }
}

/// `W_ab = Σ_{cd} M_cd Σ_o conj(G_o[c,a]) G_o[d,b]`, arranged so that `vec(W) = S vec(M)`.
fn superoperator(kraus: &[Array2<C64>], k: usize) -> Array2<C64> {
    let mut u = Array2::<C64>::zeros((kraus.len(), k * k));
    for (o, g) in kraus.iter().enumerate() {
        u.row_mut(o).assign(&Array1::from_iter(g.iter().copied()));
    }
    // raw[(c,a),(d,b)] = Σ_o conj(G_o[c,a]) G_o[d,b]
    let raw = u.t().mapv(|z| z.conj()).dot(&u);
    let mut s = Array2::<C64>::zeros((k * k, k * k));
    for c in 0..k {
        for a in 0..k {
            for d in 0..k {
                for b in 0..k {
                    s[[a * k + b, c * k + d]] = raw[[c * k + a, d * k + b]];
                }
            }
        }
    }
    s
}

fn shifted(x: &BlockOperator, zeta: C64) -> Result<BlockOperator> {
    if zeta == C64::new(0.0, 0.0) {
        return Ok(x.clone());
    }
    Ok(x.sub(&BlockOperator::identity(x.dims().to_vec()).scaled(zeta))?)
}

pub fn nonspread_error(
    chain: &Chain,
    sd: &SpectralData,
    x: &Observable,
    ell: usize,
    t: f64,
    i0: &EnergyWindow,
) -> Result<f64> {
    Ok(Nonspread::new(chain, sd, x, ell, i0)?.error(t))
}

/// `X_ℓ(t)` as an explicit observable on `S_ℓ`. Builds dense full-space matrices; small chains only.
pub fn nonspread_observable(
    chain: &Chain,
    sd: &SpectralData,
    x: &Observable,
    ell: usize,
    t: f64,
    i0: &EnergyWindow,
) -> Result<Observable> {
    let regions = Regions::new(chain, x.support, ell)?;
    let zeta = pm_decompose(chain, x)?.zeta;
    let xp = shifted(&x.op, zeta)?;
    let basis = WindowBasis::new(sd, *i0)?;
    let v = basis.columns();
    let mt = conjugate_phases(&v.inner(&xp.apply(&v)), &basis.energies(), t);
    let vd = v.to_dense();
    let z = vd.dot(&mt).dot(&vd.t().mapv(|c| c.conj()));
    let z = BlockOperator::from_dense(chain.dims(), z.view(), 0.0)?;
    let tilde = compress(chain, &z, regions.inner)?;
    let op = plus_projector_sites(chain, regions.t_mask)
        .matmul(&tilde.op)?
        .add(&BlockOperator::identity(chain.dims()).scaled(zeta))?;
    Ok(Observable::new(op, regions.outer))
}
