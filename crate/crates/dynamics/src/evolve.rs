use ndarray::Array2;
use spectral::{EnergyWindow, SpectralData};
use spin_core::{Block, BlockOperator, C64};

use crate::error::DynamicsError;

/// `e^{itE}` for each energy.
pub fn phases(energies: &[f64], t: f64) -> Vec<C64> {
    energies.iter().map(|&e| C64::from_polar(1.0, t * e)).collect()
}

/// `D M D^*` with `D = diag(e^{itE})`.
pub fn conjugate_phases(m: &Array2<C64>, energies: &[f64], t: f64) -> Array2<C64> {
    let d = phases(energies, t);
    let mut out = m.clone();
    for ((i, j), z) in out.indexed_iter_mut() {
        *z *= d[i] * d[j].conj();
    }
    out
}

pub fn commutator(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    a.dot(b) - b.dot(a)
}

/// Per-sector unitary `1 + V (diag(e^{itE}) - 1) V^*` over the levels in `w`.
fn sector_unitaries(sd: &SpectralData, w: &EnergyWindow, t: f64) -> Vec<Option<Array2<C64>>> {
    sd.sectors()
        .iter()
        .map(|s| {
            let keep: Vec<usize> = (0..s.values.len()).filter(|&i| w.contains(s.values[i])).collect();
            if keep.is_empty() {
                return None;
            }
            let v = s.vectors.select(ndarray::Axis(1), &keep).mapv(|x| C64::new(x, 0.0));
            let d: Vec<C64> = keep.iter().map(|&i| C64::from_polar(1.0, t * s.values[i]) - 1.0).collect();
            let mut vd = v.clone();
            for ((_, c), z) in vd.indexed_iter_mut() {
                *z *= d[c];
            }
            let mut u = vd.dot(&v.t());
            for i in 0..u.nrows() {
                u[[i, i]] += 1.0;
            }
            Some(u)
        })
        .collect()
}

fn conjugate(x: &BlockOperator, us: &[Option<Array2<C64>>]) -> BlockOperator {
    let mut out = BlockOperator::zeros(x.dims().to_vec());
    for (&(a, b), blk) in x.blocks() {
        let mut m = blk.to_dense();
        if let Some(ub) = &us[b] {
            m = m.dot(&ub.t().mapv(|z| z.conj()));
        }
        if let Some(ua) = &us[a] {
            m = ua.dot(&m);
        }
        out.insert(a, b, Block::Dense(m)).expect("shape preserved");
    }
    out
}

/// `τ_t(X) = e^{itH} X e^{-itH}`.
pub fn heisenberg(sd: &SpectralData, x: &BlockOperator, t: f64) -> Result<BlockOperator, DynamicsError> {
    if !sd.is_complete() {
        return Err(DynamicsError::IncompleteSpectrum);
    }
    Ok(conjugate(x, &sector_unitaries(sd, &EnergyWindow::everything(), t)))
}

/// `τ^B_t(X) = e^{itH_B} X e^{-itH_B}` with `H_B = P_B H`.
pub fn heisenberg_truncated(
    sd: &SpectralData,
    x: &BlockOperator,
    t: f64,
    b: &EnergyWindow,
) -> Result<BlockOperator, DynamicsError> {
    sd.check_covers(b)?;
    Ok(conjugate(x, &sector_unitaries(sd, b, t)))
}
