/// Function sampled on a uniform grid `x0 + k dx`, zero outside `support`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<f64>,
    pub support: (f64, f64),
}

impl SampledFunction {
    pub fn new(x0: f64, dx: f64, values: Vec<f64>, support: (f64, f64)) -> Self {
        Self { x0, dx, values, support }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, k: usize) -> f64 {
        self.x0 + k as f64 * self.dx
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(|(k, &v)| (self.x(k), v))
    }

    /// Piecewise-linear interpolation, zero outside the support.
    pub fn eval(&self, x: f64) -> f64 {
        if x < self.support.0 || x > self.support.1 || self.values.is_empty() {
            return 0.0;
        }
        let u = (x - self.x0) / self.dx;
        if u < 0.0 || u > (self.len() - 1) as f64 {
            return 0.0;
        }
        let k = (u.floor() as usize).min(self.len().saturating_sub(2));
        let w = u - k as f64;
        if k + 1 >= self.len() {
            return self.values[k];
        }
        (1.0 - w) * self.values[k] + w * self.values[k + 1]
    }

    /// Trapezoid rule.
    pub fn integral(&self) -> f64 {
        let n = self.values.len();
        if n < 2 {
            return 0.0;
        }
        let inner: f64 = self.values[1..n - 1].iter().sum();
        self.dx * (inner + 0.5 * (self.values[0] + self.values[n - 1]))
    }
}
