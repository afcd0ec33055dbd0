use ndarray::{Array1, Array2};
use spectral::{EnergyWindow, SpectralData, WindowBasis, WindowedOperator};
use spin_core::{BlockOperator, Columns, C64};

use crate::error::DynamicsError;
use crate::evolve::phases;
use crate::rank_one::RankOneTerm;

/// The all-up state as a single sector-resolved column.
pub fn ground_vector(dims: &[usize]) -> Columns {
    let mut c = Columns::zeros(dims, 1);
    c.set_unit(0, 0, 0, C64::new(1.0, 0.0));
    c
}

fn first_column(m: Array2<C64>) -> Array1<C64> {
    m.column(0).to_owned()
}

fn scale_rows(m: &Array2<C64>, d: &[C64]) -> Array2<C64> {
    let mut out = m.clone();
    for ((i, _), z) in out.indexed_iter_mut() {
        *z *= d[i];
    }
    out
}

fn scale_cols(m: &Array2<C64>, d: &[C64]) -> Array2<C64> {
    let mut out = m.clone();
    for ((_, j), z) in out.indexed_iter_mut() {
        *z *= d[j];
    }
    out
}

fn scale_vec(v: &Array1<C64>, d: &[C64], c: C64) -> Array1<C64> {
    Array1::from_iter(v.iter().zip(d).map(|(x, p)| c * p * x))
}

/// Everything needed to evaluate windowed products of `τ^K_t(X)` and `Y`
/// at many times: the compressions `X_K`, `Y_K`, `(XY)_K`, `(YX)_K` and the
/// window coordinates of `Xψ₀`, `X^*ψ₀`, `Yψ₀`, `Y^*ψ₀`.
#[derive(Debug, Clone)]
pub struct WindowPair {
    pub window: EnergyWindow,
    pub energies: Vec<f64>,
    pub x: Array2<C64>,
    pub y: Array2<C64>,
    pub xy: Array2<C64>,
    pub yx: Array2<C64>,
    pub x0: Array1<C64>,
    pub xs0: Array1<C64>,
    pub y0: Array1<C64>,
    pub ys0: Array1<C64>,
    ground_energy: f64,
    ground_inside: bool,
}

impl WindowPair {
    pub fn new(sd: &SpectralData, x: &BlockOperator, y: &BlockOperator, k: EnergyWindow) -> Result<Self, DynamicsError> {
        let basis = WindowBasis::new(sd, k)?;
        Ok(Self::from_basis(sd, &basis, x, y))
    }

    pub fn from_basis(sd: &SpectralData, basis: &WindowBasis, x: &BlockOperator, y: &BlockOperator) -> Self {
        let v = basis.columns();
        let xa = x.adjoint();
        let ya = y.adjoint();
        let xv = x.apply(&v);
        let yv = y.apply(&v);
        let xav = xa.apply(&v);
        let yav = ya.apply(&v);
        let psi = ground_vector(sd.dims());
        let ground_energy = sd.ground_energy();
        Self {
            window: basis.window,
            energies: basis.energies(),
            x: v.inner(&xv),
            y: v.inner(&yv),
            xy: xav.inner(&yv),
            yx: yav.inner(&xv),
            x0: first_column(basis.coords(&x.apply(&psi))),
            xs0: first_column(basis.coords(&xa.apply(&psi))),
            y0: first_column(basis.coords(&y.apply(&psi))),
            ys0: first_column(basis.coords(&ya.apply(&psi))),
            ground_energy,
            ground_inside: basis.window.contains(ground_energy),
        }
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// Phase picked up by `ψ₀` under `e^{-itH_K}`.
    fn ground_phase(&self, t: f64) -> C64 {
        if self.ground_inside {
            C64::from_polar(1.0, -t * self.ground_energy)
        } else {
            C64::new(1.0, 0.0)
        }
    }

    /// `R_K(X, Y) = (XY)_K - X_K Y_K`.
    pub fn correlator(&self) -> Array2<C64> {
        &self.xy - &self.x.dot(&self.y)
    }

    /// `(τ^K_t(X) Y)_K = D [X_K D^* Y_K + (XY)_K - X_K Y_K]`.
    pub fn evolved_times_y(&self, t: f64) -> Array2<C64> {
        let d = phases(&self.energies, t);
        let dc: Vec<C64> = d.iter().map(|z| z.conj()).collect();
        let inner = scale_cols(&self.x, &dc).dot(&self.y) + self.correlator();
        scale_rows(&inner, &d)
    }

    /// `(Y τ^K_t(X))_K = [Y_K D X_K + (YX)_K - Y_K X_K] D^*`.
    pub fn y_times_evolved(&self, t: f64) -> Array2<C64> {
        let d = phases(&self.energies, t);
        let dc: Vec<C64> = d.iter().map(|z| z.conj()).collect();
        let inner = scale_cols(&self.y, &d).dot(&self.x) + &self.yx - self.y.dot(&self.x);
        scale_cols(&inner, &dc)
    }

    /// `[τ^K_t(X), Y]_K`.
    pub fn commutator(&self, t: f64) -> Array2<C64> {
        self.evolved_times_y(t) - self.y_times_evolved(t)
    }

    /// The four rank-one terms `τ^K_t(X)P₀Y`, `τ^K_t(Y)P₀X`, `YP₀τ^K_t(X)`, `XP₀τ^K_t(Y)`, compressed to `K`.
    pub fn counterterms(&self, t: f64) -> [RankOneTerm; 4] {
        let d = phases(&self.energies, t);
        let g = self.ground_phase(t);
        [
            RankOneTerm::new(scale_vec(&self.x0, &d, g), self.ys0.clone()),
            RankOneTerm::new(scale_vec(&self.y0, &d, g), self.xs0.clone()),
            RankOneTerm::new(self.y0.clone(), scale_vec(&self.xs0, &d, g.conj())),
            RankOneTerm::new(self.x0.clone(), scale_vec(&self.ys0, &d, g.conj())),
        ]
    }

    /// `[[τ^K_t(X), Y]]` compressed to `K`.
    pub fn double_bracket(&self, t: f64) -> Array2<C64> {
        let mut m = self.commutator(t);
        let [a, b, c, d] = self.counterterms(t);
        let one = C64::new(1.0, 0.0);
        a.add_to(&mut m, -one);
        b.add_to(&mut m, -one);
        c.add_to(&mut m, one);
        d.add_to(&mut m, one);
        m
    }
}

/// `R_B(X, Y) = P_B X P̄_B Y P_B` in the window eigenbasis.
pub fn correlator(
    sd: &SpectralData,
    x: &BlockOperator,
    y: &BlockOperator,
    b: EnergyWindow,
) -> Result<WindowedOperator, DynamicsError> {
    let p = WindowPair::new(sd, x, y, b)?;
    Ok(WindowedOperator { window: b, matrix: p.correlator(), energies: p.energies })
}

/// `(τ_t(X) P₀ Y)_W = T(P_W e^{itH} X ψ₀, P_W Y^* ψ₀)` in window coordinates.
pub fn counterterm(
    sd: &SpectralData,
    x: &BlockOperator,
    y: &BlockOperator,
    t: f64,
    w: EnergyWindow,
) -> Result<RankOneTerm, DynamicsError> {
    let basis = WindowBasis::new(sd, w)?;
    let psi = ground_vector(sd.dims());
    let x0 = first_column(basis.coords(&x.apply(&psi)));
    let ys0 = first_column(basis.coords(&y.adjoint().apply(&psi)));
    let d = phases(&basis.energies(), t);
    let g = C64::from_polar(1.0, -t * sd.ground_energy());
    Ok(RankOneTerm::new(scale_vec(&x0, &d, g), ys0))
}

/// `[[τ^K_t(X), Y]]_K`.
pub fn double_bracket(
    sd: &SpectralData,
    x: &BlockOperator,
    y: &BlockOperator,
    t: f64,
    k: EnergyWindow,
) -> Result<WindowedOperator, DynamicsError> {
    let p = WindowPair::new(sd, x, y, k)?;
    Ok(WindowedOperator { window: k, matrix: p.double_bracket(t), energies: p.energies })
}
