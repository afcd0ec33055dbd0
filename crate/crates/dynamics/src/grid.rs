/// Times at which suprema over `t` are evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    pub points: Vec<f64>,
}

/// Maximum of a function over a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMax {
    pub value: f64,
    pub t_star: f64,
    /// The maximizer is the largest grid time, so the supremum may lie beyond the grid.
    pub at_boundary: bool,
}

impl TimeGrid {
    pub fn new(mut points: Vec<f64>) -> Self {
        points.sort_by(f64::total_cmp);
        points.dedup();
        Self { points }
    }

    /// `{0}`, 64 equispaced points in `(0, t_lin]` and 64 log-spaced points in `[10^a, 10^b]`.
    pub fn standard(t_lin: f64, n_lin: usize, log_lo: f64, log_hi: f64, n_log: usize) -> Self {
        let mut p = vec![0.0];
        p.extend((1..=n_lin).map(|k| t_lin * k as f64 / n_lin as f64));
        if n_log > 1 {
            p.extend((0..n_log).map(|k| 10f64.powf(log_lo + (log_hi - log_lo) * k as f64 / (n_log - 1) as f64)));
        }
        Self::new(p)
    }

    pub fn linear(t_max: f64, n: usize) -> Self {
        Self::new((0..n).map(|k| t_max * k as f64 / (n - 1).max(1) as f64).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_over<E>(&self, mut f: impl FnMut(f64) -> Result<f64, E>) -> Result<GridMax, E> {
        let mut best = GridMax { value: f64::NEG_INFINITY, t_star: f64::NAN, at_boundary: false };
        for &t in &self.points {
            let v = f(t)?;
            if v > best.value {
                best.value = v;
                best.t_star = t;
            }
        }
        best.at_boundary = self.points.last() == Some(&best.t_star) && self.points.len() > 1;
        Ok(best)
    }
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self::standard(100.0, 64, -2.0, 3.0, 64)
    }
}
