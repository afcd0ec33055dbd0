use ndarray::Array2;
use spin_core::linalg::{sym_eig, EigRange};
use spin_core::BlockOperator;

use crate::error::SpectralError;
use crate::window::EnergyWindow;

/// Eigenpairs of one magnon sector. `vectors` is `dim x values.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorSpectrum {
    pub values: Vec<f64>,
    pub vectors: Array2<f64>,
    /// Every eigenvalue of the sector is present.
    pub complete: bool,
}

/// One eigenvalue, addressed by sector and position inside the sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub energy: f64,
    pub sector: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    pub(crate) dims: Vec<usize>,
    pub(crate) sectors: Vec<SectorSpectrum>,
    pub(crate) levels: Vec<Level>,
    pub(crate) cap: Option<f64>,
    pub(crate) scale: f64,
}

/// Full diagonalization of every sector.
pub fn diagonalize(h: &BlockOperator) -> Result<SpectralData, SpectralError> {
    run(h, None)
}

/// Eigenpairs with energy at most `cap`. Sectors whose Gershgorin lower bound
/// exceeds the cap are not diagonalized.
pub fn diagonalize_below(h: &BlockOperator, cap: f64) -> Result<SpectralData, SpectralError> {
    run(h, Some(cap))
}

/// Capped spectra are computed slightly past the cap so that windows ending
/// exactly at the cap, including their membership tolerance, are covered.
fn margin(cap: f64) -> f64 {
    1e-9 * cap.abs().max(1.0)
}

fn run(h: &BlockOperator, cap: Option<f64>) -> Result<SpectralData, SpectralError> {
    for (a, b) in h.block_keys() {
        if a != b {
            return Err(SpectralError::NotBlockDiagonal(a, b));
        }
    }
    let dims = h.dims().to_vec();
    let mut sectors = Vec::with_capacity(dims.len());
    let mut scale = 0.0f64;
    for (n, &dim) in dims.iter().enumerate() {
        let blk = h.block(n, n);
        let (lower, upper) = blk.map_or((0.0, 0.0), |b| (b.gershgorin_lower(), b.gershgorin_upper()));
        scale = scale.max(upper.abs()).max(lower.abs());
        let spec = match cap {
            Some(c) if dim > 0 && lower > c + margin(c) => {
                SectorSpectrum { values: Vec::new(), vectors: Array2::zeros((dim, 0)), complete: false }
            }
            _ => {
                let dense = match blk {
                    Some(b) => b.to_dense().mapv(|z| z.re),
                    None => Array2::zeros((dim, dim)),
                };
                let range = match cap {
                    Some(c) if upper > c => EigRange::Values { lo: lower - 1.0, hi: c + margin(c) },
                    _ => EigRange::All,
                };
                let (values, vectors) = sym_eig(dense.view(), range, true)
                    .map_err(|source| SpectralError::Eigensolver { sector: n, source })?;
                let complete = values.len() == dim;
                SectorSpectrum { values, vectors: vectors.expect("vectors requested"), complete }
            }
        };
        sectors.push(spec);
    }
    Ok(SpectralData::assemble(dims, sectors, cap, scale))
}

impl SpectralData {
    pub(crate) fn assemble(dims: Vec<usize>, sectors: Vec<SectorSpectrum>, cap: Option<f64>, scale: f64) -> Self {
        let mut levels: Vec<Level> = sectors
            .iter()
            .enumerate()
            .flat_map(|(sector, s)| s.values.iter().enumerate().map(move |(index, &energy)| Level { energy, sector, index }))
            .collect();
        levels.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.sector.cmp(&b.sector)).then(a.index.cmp(&b.index)));
        let cap = if sectors.iter().all(|s| s.complete) { None } else { cap };
        Self { dims, sectors, levels, cap, scale }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn sector(&self, n: usize) -> &SectorSpectrum {
        &self.sectors[n]
    }

    pub fn sectors(&self) -> &[SectorSpectrum] {
        &self.sectors
    }

    /// All computed levels, ascending in energy.
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Energy up to which the spectrum is known; `None` when complete.
    pub fn cap(&self) -> Option<f64> {
        self.cap
    }

    pub fn is_complete(&self) -> bool {
        self.cap.is_none()
    }

    /// Upper bound on `‖H‖` from Gershgorin discs.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Merge tolerance for degenerate levels.
    pub fn cluster_tol(&self) -> f64 {
        1e-10 * self.scale.max(1.0)
    }

    pub fn ground_energy(&self) -> f64 {
        self.levels.first().map_or(f64::NAN, |l| l.energy)
    }

    pub fn check_covers(&self, w: &EnergyWindow) -> Result<(), SpectralError> {
        match self.cap {
            Some(cap) if w.reach() > cap + margin(cap) => Err(SpectralError::Uncovered { hi: w.hi, cap }),
            _ => Ok(()),
        }
    }

    /// Levels inside `w`, ascending.
    pub fn window_levels(&self, w: &EnergyWindow) -> Result<Vec<Level>, SpectralError> {
        self.check_covers(w)?;
        Ok(self.levels.iter().copied().filter(|l| w.contains(l.energy)).collect())
    }

    /// Split sorted levels into runs whose neighbouring energies differ by at most the cluster tolerance.
    pub fn clusters(&self, levels: &[Level]) -> Vec<Vec<Level>> {
        let tol = self.cluster_tol();
        let mut out: Vec<Vec<Level>> = Vec::new();
        for l in levels {
            match out.last_mut() {
                Some(c) if l.energy - c.last().unwrap().energy <= tol => c.push(*l),
                _ => out.push(vec![*l]),
            }
        }
        out
    }

    /// Eigenvector of a level as a real column of its sector.
    pub fn vector(&self, l: &Level) -> ndarray::ArrayView1<'_, f64> {
        self.sectors[l.sector].vectors.column(l.index)
    }
}
