use std::path::Path;

use crate::error::FilterError;
use crate::fourier::Quadrature;
use crate::sampled::SampledFunction;

/// Two-column CSV `x,f`.
pub fn write_function_csv(f: &SampledFunction, path: &Path) -> Result<(), FilterError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["x", "f"])?;
    for (x, v) in f.points() {
        w.write_record([format!("{x:.17e}"), format!("{v:.17e}")])?;
    }
    w.flush().map_err(|source| FilterError::Io { path: path.display().to_string(), source })
}

/// CSV `t,re,im` of transform samples.
pub fn write_fourier_csv(q: &Quadrature, path: &Path) -> Result<(), FilterError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t", "re", "im"])?;
    for (k, v) in q.values.iter().enumerate() {
        w.write_record([format!("{:.17e}", q.t(k)), format!("{:.17e}", v.re), format!("{:.17e}", v.im)])?;
    }
    w.flush().map_err(|source| FilterError::Io { path: path.display().to_string(), source })
}
