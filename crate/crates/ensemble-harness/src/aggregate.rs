//! Per-abscissa statistics over realizations.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use diagnostics::DiagnosticPoint;
use serde::{Deserialize, Serialize};

/// One line of `data.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub experiment: String,
    pub abscissa: f64,
    pub mean: f64,
    pub stderr: f64,
    pub median: f64,
    pub n: usize,
    pub t_star_mode: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Sample standard deviation over `√n`; zero for a single value.
pub fn stderr(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return 0.0;
    }
    let m = mean(v);
    let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() - 1) as f64;
    (var / v.len() as f64).sqrt()
}

pub fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.total_cmp(b));
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

/// Most frequent value, ties going to the smallest.
fn mode(v: &[f64]) -> Option<f64> {
    let mut counts: BTreeMap<Key, usize> = BTreeMap::new();
    for &t in v {
        *counts.entry(Key(t)).or_default() += 1;
    }
    let mut best: Option<(Key, usize)> = None;
    for (k, c) in counts {
        if best.map_or(true, |(_, bc)| c > bc) {
            best = Some((k, c));
        }
    }
    best.map(|(k, _)| k.0)
}

/// Groups points by `(name, abscissa)` and summarizes each group.
///
/// `realizations` must already be in realization order; sums are accumulated in
/// that order so the result does not depend on how the points were produced.
pub fn aggregate<'a>(realizations: impl IntoIterator<Item = &'a [DiagnosticPoint]>) -> Vec<Row> {
    let mut groups: BTreeMap<(String, Key), (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for points in realizations {
        for p in points {
            let g = groups.entry((p.name.clone(), Key(p.abscissa))).or_default();
            g.0.push(p.value);
            if let Some(t) = p.t_star {
                g.1.push(t);
            }
        }
    }
    groups
        .into_iter()
        .map(|((name, x), (values, ts))| Row {
            experiment: name,
            abscissa: x.0,
            mean: mean(&values),
            stderr: stderr(&values),
            median: median(&values),
            n: values.len(),
            t_star_mode: mode(&ts),
        })
        .collect()
}

/// Rows of one series, ordered by abscissa.
pub fn series<'a>(rows: &'a [Row], name: &str) -> Vec<&'a Row> {
    rows.iter().filter(|r| r.experiment == name).collect()
}
