use ndarray::Array2;
use spin_core::{Block, BlockOperator, Observable, C64};

use crate::data::SpectralData;
use crate::error::SpectralError;
use crate::window::EnergyWindow;

/// `g(H) χ_W(H)` by eigenbasis functional calculus.
pub fn matrix_function(
    sd: &SpectralData,
    g: impl Fn(f64) -> C64,
    domain: &EnergyWindow,
) -> Result<BlockOperator, SpectralError> {
    sd.check_covers(domain)?;
    let mut op = BlockOperator::zeros(sd.dims().to_vec());
    for (n, spec) in sd.sectors().iter().enumerate() {
        let keep: Vec<usize> = (0..spec.values.len()).filter(|&i| domain.contains(spec.values[i])).collect();
        if keep.is_empty() {
            continue;
        }
        let v = spec.vectors.select(ndarray::Axis(1), &keep);
        let weights: Vec<C64> = keep.iter().map(|&i| g(spec.values[i])).collect();
        if weights.iter().all(|w| w.norm() == 0.0) {
            continue;
        }
        let dim = v.nrows();
        let mut scaled = Array2::<C64>::zeros((dim, keep.len()));
        for ((r, c), z) in scaled.indexed_iter_mut() {
            *z = weights[c] * v[[r, c]];
        }
        let vc = v.mapv(|x| C64::new(x, 0.0));
        op.insert(n, n, Block::Dense(scaled.dot(&vc.t())))?;
    }
    Ok(op)
}

/// Spectral projector `χ_W(H)`.
pub fn window_projector(sd: &SpectralData, w: &EnergyWindow, chain: &spin_core::Chain) -> Result<Observable, SpectralError> {
    let op = matrix_function(sd, |_| C64::new(1.0, 0.0), w)?;
    Ok(Observable::new(op, chain.full_support()))
}
