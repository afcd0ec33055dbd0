use spin_core::linalg::{sym_eig, EigRange};
use spin_core::BlockOperator;

use crate::error::SpectralError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapInfo {
    /// Energy of the zero-magnon state.
    pub ground: f64,
    /// Smallest eigenvalue over all sectors with at least one magnon.
    pub lowest_excited: f64,
    pub sector: usize,
}

/// Ground energy and lowest excitation, using only the lowest eigenvalue of
/// each sector. Sectors whose Gershgorin bound cannot beat the running minimum
/// are skipped.
pub fn spectral_gap(h: &BlockOperator) -> Result<GapInfo, SpectralError> {
    let dims = h.dims();
    let lowest = |n: usize| -> Result<f64, SpectralError> {
        match h.block(n, n) {
            None => Ok(0.0),
            Some(b) => {
                let dense = b.to_dense().mapv(|z| z.re);
                let (w, _) = sym_eig(dense.view(), EigRange::Lowest(1), false)
                    .map_err(|source| SpectralError::Eigensolver { sector: n, source })?;
                Ok(w[0])
            }
        }
    };
    let ground = if dims[0] > 0 { lowest(0)? } else { f64::NAN };
    // visit sectors from the smallest Gershgorin bound upward
    let mut order: Vec<(f64, usize)> = (1..dims.len())
        .filter(|&n| dims[n] > 0)
        .map(|n| (h.block(n, n).map_or(0.0, |b| b.gershgorin_lower()), n))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = f64::INFINITY;
    let mut sector = 0;
    for (bound, n) in order {
        if bound >= best {
            break;
        }
        let e = lowest(n)?;
        if e < best {
            best = e;
            sector = n;
        }
    }
    Ok(GapInfo { ground, lowest_excited: best, sector })
}
