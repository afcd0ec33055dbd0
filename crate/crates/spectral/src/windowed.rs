use std::collections::BTreeMap;

use ndarray::Array2;
use spin_core::linalg::complexify;
use spin_core::{BlockOperator, Columns, Observable, C64};

use crate::data::{Level, SpectralData};
use crate::error::SpectralError;
use crate::window::EnergyWindow;

/// Orthonormal eigenbasis of an energy window. Column `c` is the eigenvector of `levels[c]`.
#[derive(Debug, Clone)]
pub struct WindowBasis {
    pub window: EnergyWindow,
    pub levels: Vec<Level>,
    dims: Vec<usize>,
    /// sector -> (eigenvectors `dim x k_N`, their column positions)
    parts: BTreeMap<usize, (Array2<C64>, Vec<usize>)>,
}

impl WindowBasis {
    pub fn new(sd: &SpectralData, window: EnergyWindow) -> Result<Self, SpectralError> {
        let levels = sd.window_levels(&window)?;
        let mut grouped: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (c, l) in levels.iter().enumerate() {
            grouped.entry(l.sector).or_default().push(c);
        }
        let parts = grouped
            .into_iter()
            .map(|(n, cols)| {
                let idx: Vec<usize> = cols.iter().map(|&c| levels[c].index).collect();
                let v = sd.sector(n).vectors.select(ndarray::Axis(1), &idx);
                (n, (complexify(v.view()), cols))
            })
            .collect();
        Ok(Self { window, levels, dims: sd.dims().to_vec(), parts })
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `V^* X V`.
    pub fn compress(&self, x: &BlockOperator) -> Array2<C64> {
        self.cross(x, self)
    }

    /// `V^* X W` between this basis and another basis of the same chain.
    pub fn cross(&self, x: &BlockOperator, right: &WindowBasis) -> Array2<C64> {
        let mut out = Array2::zeros((self.dim(), right.dim()));
        for (&(a, b), blk) in x.blocks() {
            let (Some((va, ca)), Some((vb, cb))) = (self.parts.get(&a), right.parts.get(&b)) else { continue };
            let m = va.t().mapv(|z| z.conj()).dot(&blk.dot_dense(vb.view()));
            for (i, &r) in ca.iter().enumerate() {
                for (j, &c) in cb.iter().enumerate() {
                    out[[r, c]] = m[[i, j]];
                }
            }
        }
        out
    }

    /// Coordinates `V^* φ` of a family of vectors (`k x m`).
    pub fn coords(&self, phi: &Columns) -> Array2<C64> {
        let mut out = Array2::zeros((self.dim(), phi.ncols()));
        for (&n, (v, cols)) in &self.parts {
            if phi.is_zero_part(n) {
                continue;
            }
            let m = v.t().mapv(|z| z.conj()).dot(&phi.part(n));
            for (i, &r) in cols.iter().enumerate() {
                out.row_mut(r).assign(&m.row(i));
            }
        }
        out
    }

    /// `V c` for a `k x m` coefficient matrix.
    pub fn expand(&self, coeff: &Array2<C64>) -> Columns {
        let mut out = Columns::zeros(&self.dims, coeff.ncols());
        for (&n, (v, cols)) in &self.parts {
            let c = coeff.select(ndarray::Axis(0), cols);
            out.set_part(n, v.dot(&c));
        }
        out
    }

    /// The basis itself as sector-resolved columns.
    pub fn columns(&self) -> Columns {
        self.expand(&Array2::eye(self.dim()))
    }

    /// Gram matrix `(A V)^* (A V)` for a diagonal operator given by `diag(sector, index)`.
    pub fn diagonal_gram(&self, diag: impl Fn(usize, usize) -> f64) -> Array2<C64> {
        let k = self.dim();
        let mut out = Array2::zeros((k, k));
        for (&n, (v, cols)) in &self.parts {
            let w: Vec<f64> = (0..v.nrows()).map(|i| diag(n, i).powi(2)).collect();
            let mut scaled = v.clone();
            for (i, mut row) in scaled.rows_mut().into_iter().enumerate() {
                row.mapv_inplace(|z| z * w[i]);
            }
            let g = v.t().mapv(|z| z.conj()).dot(&scaled);
            for (i, &r) in cols.iter().enumerate() {
                for (j, &c) in cols.iter().enumerate() {
                    out[[r, c]] = g[[i, j]];
                }
            }
        }
        out
    }

    /// Positions of the columns belonging to `sector`.
    pub fn sector_columns(&self, sector: usize) -> &[usize] {
        self.parts.get(&sector).map_or(&[], |(_, c)| c.as_slice())
    }
}

/// `X_W` expressed in the window eigenbasis.
#[derive(Debug, Clone)]
pub struct WindowedOperator {
    pub window: EnergyWindow,
    pub energies: Vec<f64>,
    pub matrix: Array2<C64>,
}

impl WindowedOperator {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// Compress again to a sub-window.
    pub fn restrict(&self, w: &EnergyWindow) -> WindowedOperator {
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| w.contains(self.energies[i])).collect();
        let m = self.matrix.select(ndarray::Axis(0), &keep).select(ndarray::Axis(1), &keep);
        WindowedOperator { window: *w, energies: keep.iter().map(|&i| self.energies[i]).collect(), matrix: m }
    }
}

pub fn window_compress(sd: &SpectralData, w: EnergyWindow, x: &Observable) -> Result<WindowedOperator, SpectralError> {
    let basis = WindowBasis::new(sd, w)?;
    Ok(WindowedOperator { window: w, energies: basis.energies(), matrix: basis.compress(&x.op) })
}
