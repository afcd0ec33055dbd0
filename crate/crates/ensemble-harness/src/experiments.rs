//! What one disorder realization contributes to each experiment.

use diagnostics::{
    clustering_residual, counterterm_trace, deloc_witness, fermi_check, fermi_grid, lr_counterterm_residual, lr_norm,
    per_eigenstate_clustering, DiagnosticPoint, DlKernel, DropletBounds, Flag, Nonspread, OneMagnon,
};
use dynamics::TimeGrid;
use filters::{filter_f, insertion_check, FilterSpec};
use hamiltonian::{build, one_magnon_anderson, sample_disorder, ChainParams, DisorderRealization};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral::{diagonalize, diagonalize_below, spectral_gap, SpectralData};
use spin_core::{embed_local, BlockOperator, Chain, Observable, Support, C64};

use crate::config::{Experiment, ExperimentConfig, Windows};
use crate::dos::{dos_edges, histogram};
use crate::error::Result;

/// Inputs shared by every realization of a run.
pub struct Context {
    pub cfg: ExperimentConfig,
    pub params: ChainParams,
    pub chain: Chain,
    pub windows: Windows,
    pub grid: TimeGrid,
}

impl Context {
    pub fn new(cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            cfg: cfg.clone(),
            params: cfg.params()?,
            chain: Chain::new(cfg.l)?,
            windows: cfg.windows()?,
            grid: cfg.grid.grid(),
        })
    }

    fn disorder(&self, index: u64) -> Result<DisorderRealization> {
        Ok(sample_disorder(&self.params.disorder, self.cfg.l, index)?)
    }

    fn hamiltonian(&self, omega: &DisorderRealization) -> Result<BlockOperator> {
        Ok(build(&self.chain, &self.params, omega)?)
    }

    fn spectrum_below(&self, omega: &DisorderRealization, cap: f64) -> Result<SpectralData> {
        Ok(diagonalize_below(&self.hamiltonian(omega)?, cap)?)
    }

    fn one_magnon(&self, omega: &DisorderRealization) -> Result<OneMagnon> {
        let (e, v) = one_magnon_anderson(&self.params, omega)?.eigen()?;
        Ok(OneMagnon::new(self.cfg.l, e, v)?)
    }

    fn sigma_x(&self, site: i64) -> Result<Observable> {
        Ok(Observable::sigma_x(&self.chain, site)?)
    }
}

fn flag_empty(p: DiagnosticPoint, empty: bool) -> DiagnosticPoint {
    if empty && !p.has_flag(Flag::EmptyWindow) {
        p.with_flag(Flag::EmptyWindow)
    } else {
        p
    }
}

/// Sites `(i, j)` at distance `d`, as symmetric about 0 as the parity of `d` allows.
pub fn symmetric_pair(d: i64) -> (i64, i64) {
    let i = -(d / 2);
    (i, i + d)
}

pub fn realize(ctx: &Context, index: u64) -> Result<Vec<DiagnosticPoint>> {
    let omega = ctx.disorder(index)?;
    let w = &ctx.windows;
    let cfg = &ctx.cfg;
    let mut out = Vec::new();
    match cfg.experiment {
        Experiment::Spectrum => {
            let gap = spectral_gap(&ctx.hamiltonian(&omega)?)?;
            let om = ctx.one_magnon(&omega)?;
            let e = om.energies();
            out.push(DiagnosticPoint::new("ground_energy_abs", 0.0, gap.ground.abs()));
            out.push(DiagnosticPoint::new("gap", 0.0, gap.lowest_excited - gap.ground));
            out.push(DiagnosticPoint::new("one_magnon_min", 0.0, e[0]));
            out.push(DiagnosticPoint::new("one_magnon_max", 0.0, e[e.len() - 1]));
        }
        Experiment::DlDecay => {
            let sd = ctx.spectrum_below(&omega, w.droplet.reach())?;
            let kernel = DlKernel::new(&ctx.chain, &sd, &w.droplet)?;
            let empty = kernel.n_clusters() == 0;
            for &i in &cfg.schedule {
                let p = DiagnosticPoint::new("dl_kernel", 2.0 * i as f64, kernel.value(-i, i)?);
                out.push(flag_empty(p, empty));
            }
        }
        Experiment::Nonspread => {
            let sd = ctx.spectrum_below(&omega, w.i0.reach())?;
            let x = ctx.sigma_x(0)?;
            for &ell in &cfg.schedule {
                let ns = Nonspread::new(&ctx.chain, &sd, &x, ell as usize, &w.i0)?;
                let p = DiagnosticPoint::from_grid("nonspread_error", ell as f64, ns.sup(&ctx.grid));
                out.push(flag_empty(p, ns.dim() <= 1));
            }
        }
        Experiment::Lr => {
            let sd = ctx.spectrum_below(&omega, w.droplet.reach().max(w.i0.reach()))?;
            for &i in &cfg.schedule {
                let (x, y) = (ctx.sigma_x(-i)?, ctx.sigma_x(i)?);
                out.push(lr_norm(&sd, &x, &y, &w.droplet, &ctx.grid)?);
                let r = lr_counterterm_residual(&sd, &x, &y, &w.i0, &ctx.grid)?;
                out.push(r.with);
                out.push(r.without);
            }
        }
        Experiment::Cluster => {
            let sd = ctx.spectrum_below(&omega, w.cluster.reach())?;
            let bounds = DropletBounds::new(cfg.delta, cfg.delta_param);
            for &i in &cfg.schedule {
                let (x, y) = (ctx.sigma_x(-i)?, ctx.sigma_x(i)?);
                let r = clustering_residual(&sd, &x, &y, &w.cluster, &bounds, &ctx.grid)?;
                out.push(r.with);
                out.push(r.without);
                out.push(per_eigenstate_clustering(&sd, &x, &y, &w.cluster, &ctx.grid)?);
                out.push(counterterm_trace(&sd, &x, &y, &w.cluster, &ctx.grid)?);
            }
        }
        Experiment::Optimality => {
            let om = ctx.one_magnon(&omega)?;
            let clean = diagnostics::clean_band(cfg.delta);
            let band = diagnostics::disordered_band(cfg.delta, cfg.lambda);
            let sd = ctx.spectrum_below(&omega, w.droplet.reach())?;
            let kernel = DlKernel::new(&ctx.chain, &sd, &w.droplet)?;
            for &d in &cfg.schedule {
                let (i, j) = symmetric_pair(d);
                let x = d as f64;
                let low = deloc_witness(&om, i, j, &w.witness_low, clean, None)?;
                let high = deloc_witness(&om, i, j, &w.witness_high, band, None)?;
                out.push(DiagnosticPoint::new("witness_droplet", x, low.product));
                out.push(DiagnosticPoint::new("witness_above", x, high.product));
                out.push(DiagnosticPoint::new("cesaro_droplet", x, low.cesaro_limit));
                out.push(DiagnosticPoint::new("cesaro_above", x, high.cesaro_limit));
                out.push(flag_empty(DiagnosticPoint::new("dl_kernel", x, kernel.value(i, j)?), kernel.n_clusters() == 0));
            }
        }
        Experiment::Fermi => {
            let sd = diagonalize(&ctx.hamiltonian(&omega)?)?;
            let x = ctx.sigma_x(0)?;
            let c = fermi_check(&sd, &x, ctx.params.fermi_theta(), false)?;
            out.push(DiagnosticPoint::new("fermi_violations", 0.0, c.violations as f64));
            out.push(DiagnosticPoint::new("fermi_worst_ratio", 0.0, c.worst_ratio));
            out.push(DiagnosticPoint::new("fermi_evaluated_pairs", 0.0, c.evaluated as f64));
            let grid = fermi_grid(&sd, &x, ctx.params.fermi_theta(), 5, 4)?;
            let worst = grid.iter().map(|p| p.norm / p.bound).fold(0.0, f64::max);
            let over = grid.iter().filter(|p| p.norm > p.bound * (1.0 + 1e-12)).count();
            out.push(DiagnosticPoint::new("fermi_grid_worst_ratio", 0.0, worst));
            out.push(DiagnosticPoint::new("fermi_grid_violations", 0.0, over as f64));
        }
        Experiment::Hastings => {
            let sd = diagonalize(&ctx.hamiltonian(&omega)?)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(index);
            let x = random_observable(&ctx.chain, &mut rng, Support::new(-1, 0)?)?;
            let y = random_observable(&ctx.chain, &mut rng, Support::new(1, 2.min(cfg.l as i64))?)?;
            let k = w.cluster;
            let filter = filter_f(FilterSpec::new(k.hi, w.theta0 - 0.25, k.hi + 1.0, cfg.alpha))?;
            let r = insertion_check(&sd, &x.op, &y.op, &filter, &k)?;
            out.push(DiagnosticPoint::new("insertion_residual", 0.0, r.residual));
            out.push(DiagnosticPoint::new("insertion_magnitude", 0.0, r.magnitude));
        }
        Experiment::Dos => {
            let (e, _) = one_magnon_anderson(&ctx.params, &omega)?.eigen()?;
            let edges = dos_edges(&ctx.params, cfg.bins)?;
            for (k, m) in histogram(&edges, &e).into_iter().enumerate() {
                out.push(DiagnosticPoint::new("dos", 0.5 * (edges[k] + edges[k + 1]), m));
            }
        }
    }
    Ok(out)
}

fn random_observable(chain: &Chain, rng: &mut ChaCha8Rng, support: Support) -> Result<Observable> {
    let n = 1usize << support.len();
    let m = ndarray::Array2::from_shape_fn((n, n), |_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    Ok(embed_local(chain, m.view(), support)?)
}
