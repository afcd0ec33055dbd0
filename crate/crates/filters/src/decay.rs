use crate::bump::Bump;
use crate::error::FilterError;

/// Stretched-exponential fit `|ĥ(t)| ≈ C t^{α'/2-1} e^{-m t^{α'}}` of the Fourier envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierDecayFit {
    pub alpha: f64,
    pub m: f64,
    pub log_c: f64,
    /// Residual sum of squares in log space.
    pub sse: f64,
    /// Envelope points `(t, max |ĥ|)` that entered the fit.
    pub points: Vec<(f64, f64)>,
}

/// Envelope values below this are dominated by round-off in the quadrature.
pub const ENVELOPE_FLOOR: f64 = 1e-13;
/// Above this the envelope is still on its pre-asymptotic shoulder.
pub const ENVELOPE_CEILING: f64 = 1e-2;

const BINS: usize = 60;
const SAMPLES_PER_BIN: usize = 60;
const EXPONENTS: usize = 221;

/// Fit the decay exponent of `|ĥ|` over `t ∈ [t_min, t_max]`.
///
/// The envelope is the maximum of `|ĥ|` over logarithmically spaced bins.
/// Envelope values outside `[floor, ceiling]` are dropped: above the ceiling
/// the decay has not started, below the floor round-off dominates.
pub fn fit_fourier_decay(bump: &Bump, t_min: f64, t_max: f64, floor: f64, ceiling: f64) -> Result<FourierDecayFit, FilterError> {
    if !(t_min > 0.0 && t_max > t_min) {
        return Err(FilterError::Fit(format!("invalid range [{t_min}, {t_max}]")));
    }
    let ratio = (t_max / t_min).ln();
    let edges: Vec<f64> = (0..=BINS).map(|k| t_min * (ratio * k as f64 / BINS as f64).exp()).collect();
    let mut points = Vec::new();
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let best = (0..SAMPLES_PER_BIN)
            .map(|k| {
                let t = a + (b - a) * k as f64 / (SAMPLES_PER_BIN - 1) as f64;
                (t, bump.fourier(t).norm())
            })
            .fold((a, -1.0), |acc, p| if p.1 > acc.1 { p } else { acc });
        if best.1 >= floor && best.1 <= ceiling {
            points.push(best);
        }
    }
    if points.len() < 4 {
        return Err(FilterError::Fit(format!("only {} envelope points inside [{floor:e}, {ceiling:e}]", points.len())));
    }
    let mut best: Option<FourierDecayFit> = None;
    for k in 0..EXPONENTS {
        let a = 0.1 + 1.1 * k as f64 / (EXPONENTS - 1) as f64;
        // y = c - m u with u = t^a
        let data: Vec<(f64, f64)> =
            points.iter().map(|&(t, e)| (t.powf(a), e.ln() + (1.0 - 0.5 * a) * t.ln())).collect();
        let n = data.len() as f64;
        let (su, sy) = data.iter().fold((0.0, 0.0), |(su, sy), &(u, y)| (su + u, sy + y));
        let (mu, my) = (su / n, sy / n);
        let (suu, suy) = data.iter().fold((0.0, 0.0), |(a, b), &(u, y)| (a + (u - mu).powi(2), b + (u - mu) * (y - my)));
        if suu <= 0.0 {
            continue;
        }
        let slope = suy / suu;
        let c = my - slope * mu;
        let sse: f64 = data.iter().map(|&(u, y)| (y - c - slope * u).powi(2)).sum();
        if best.as_ref().map_or(true, |b| sse < b.sse) {
            best = Some(FourierDecayFit { alpha: a, m: -slope, log_c: c, sse, points: Vec::new() });
        }
    }
    let mut fit = best.ok_or_else(|| FilterError::Fit("degenerate envelope".into()))?;
    fit.points = points;
    Ok(fit)
}
