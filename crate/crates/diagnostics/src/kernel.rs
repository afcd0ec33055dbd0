//! Eigenfunction correlators `Σ_E ‖N_i ψ_E‖ ‖N_j ψ_E‖` and trace norms of
//! operators sandwiched around a function of `H`.

use ndarray::Array2;
use spectral::{EnergyWindow, SpectralData, WindowBasis};
use spin_core::linalg::{complexify, factored_trace_norm};
use spin_core::{BlockOperator, Chain, C64};

use crate::error::{DiagnosticsError, Result};

#[derive(Debug, Clone)]
enum Profile {
    /// `‖N_k ψ_E‖` for every site.
    Simple(Vec<f64>),
    /// Gram matrices `(N_k V)^*(N_k V)` of a degenerate cluster, one per site.
    Cluster(Vec<Array2<C64>>),
}

/// Per-level occupation data of a window, from which the kernel for any site pair follows.
#[derive(Debug, Clone)]
pub struct DlKernel {
    l: usize,
    profiles: Vec<Profile>,
}

impl DlKernel {
    pub fn new(chain: &Chain, sd: &SpectralData, w: &EnergyWindow) -> Result<Self> {
        let levels = sd.window_levels(w)?;
        let n = chain.n_sites();
        let profiles = sd
            .clusters(&levels)
            .into_iter()
            .map(|cluster| {
                if cluster.len() == 1 {
                    let l = cluster[0];
                    let v = sd.vector(&l);
                    let mut occ = vec![0.0; n];
                    for (idx, &c) in chain.sector(l.sector).states.iter().enumerate() {
                        let p = v[idx] * v[idx];
                        for (k, o) in occ.iter_mut().enumerate() {
                            if c >> k & 1 == 1 {
                                *o += p;
                            }
                        }
                    }
                    return Profile::Simple(occ.into_iter().map(f64::sqrt).collect());
                }
                let m = cluster.len();
                let mut grams = vec![Array2::<f64>::zeros((m, m)); n];
                for a in 0..m {
                    for b in a..m {
                        if cluster[a].sector != cluster[b].sector {
                            continue;
                        }
                        let (va, vb) = (sd.vector(&cluster[a]), sd.vector(&cluster[b]));
                        for (idx, &c) in chain.sector(cluster[a].sector).states.iter().enumerate() {
                            let p = va[idx] * vb[idx];
                            for (k, g) in grams.iter_mut().enumerate() {
                                if c >> k & 1 == 1 {
                                    g[[a, b]] += p;
                                }
                            }
                        }
                        for g in grams.iter_mut() {
                            g[[b, a]] = g[[a, b]];
                        }
                    }
                }
                Profile::Cluster(grams.iter().map(|g| complexify(g.view())).collect())
            })
            .collect();
        Ok(Self { l: chain.l(), profiles })
    }

    /// Number of distinct eigenvalues in the window.
    pub fn n_clusters(&self) -> usize {
        self.profiles.len()
    }

    fn bit(&self, site: i64) -> Result<usize> {
        let k = site + self.l as i64;
        if k < 0 || k > 2 * self.l as i64 {
            return Err(DiagnosticsError::InvalidInput(format!("site {site} outside [-{0}, {0}]", self.l)));
        }
        Ok(k as usize)
    }

    /// `Σ_E ‖N_i P_E N_j‖₁`, which is `Σ_E ‖N_i ψ_E‖ ‖N_j ψ_E‖` for simple eigenvalues.
    pub fn value(&self, i: i64, j: i64) -> Result<f64> {
        let (bi, bj) = (self.bit(i)?, self.bit(j)?);
        Ok(self
            .profiles
            .iter()
            .map(|p| match p {
                Profile::Simple(occ) => occ[bi] * occ[bj],
                Profile::Cluster(grams) => {
                    let eye = Array2::<C64>::eye(grams[bi].nrows());
                    factored_trace_norm(grams[bi].view(), eye.view(), grams[bj].view())
                }
            })
            .sum())
    }
}

pub fn dl_kernel(chain: &Chain, sd: &SpectralData, i: i64, j: i64, w: &EnergyWindow) -> Result<f64> {
    DlKernel::new(chain, sd, w)?.value(i, j)
}

/// `‖A g(H) χ_W(H) B‖₁` from the Gram matrices of `AV` and `B^*V`, `V` the window eigenbasis.
pub fn sandwich_norm(
    sd: &SpectralData,
    a: &BlockOperator,
    g: impl Fn(f64) -> C64,
    b: &BlockOperator,
    w: &EnergyWindow,
) -> Result<f64> {
    let basis = WindowBasis::new(sd, *w)?;
    if basis.dim() == 0 {
        return Ok(0.0);
    }
    let v = basis.columns();
    let av = a.apply(&v);
    let bv = b.adjoint().apply(&v);
    let d = Array2::from_diag(&basis.energies().iter().map(|&e| g(e)).collect::<ndarray::Array1<_>>());
    Ok(factored_trace_norm(av.inner(&av).view(), d.view(), bv.inner(&bv).view()))
}
