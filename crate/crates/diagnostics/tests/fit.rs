use diagnostics::{fit_decay, DecayModel, DiagnosticPoint, EPS_FLOOR};
use proptest::prelude::*;

fn points(xs: &[f64], f: impl Fn(f64) -> f64) -> Vec<DiagnosticPoint> {
    xs.iter().map(|&x| DiagnosticPoint::new("synthetic", x, f(x))).collect()
}

#[test]
fn exponential_round_trip() {
    let pts = points(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], |d| 3.5 * (-0.7 * d).exp());
    let fit = fit_decay(&pts, DecayModel::Exponential).unwrap();
    assert!((fit.rate - 0.7).abs() < 1e-8, "{fit:?}");
    assert!((fit.prefactor - 3.5).abs() < 1e-8, "{fit:?}");
    assert!(fit.r_squared > 1.0 - 1e-12);
    assert!(fit.rate_stderr < 1e-8);
}

#[test]
fn constant_data_has_zero_rate() {
    let pts = points(&[2.0, 4.0, 6.0, 8.0], |_| 0.3);
    let fit = fit_decay(&pts, DecayModel::Exponential).unwrap();
    assert!(fit.rate.abs() <= fit.rate_stderr + 1e-14, "{fit:?}");
    assert_eq!(fit.r_squared, 0.0);
}

#[test]
fn stretched_round_trip() {
    let pts = points(&[1.0, 2.0, 4.0, 6.0, 8.0], |d| (-2.0 * d.sqrt()).exp());
    let fit = fit_decay(&pts, DecayModel::Stretched { alpha: 0.5 }).unwrap();
    assert!((fit.rate - 2.0).abs() < 1e-6, "{fit:?}");
}

#[test]
fn too_few_points_refused() {
    let pts = points(&[1.0, 2.0, 3.0], |d| (-d).exp());
    assert!(fit_decay(&pts, DecayModel::Exponential).is_err());
}

#[test]
fn floored_values_are_counted_and_all_floored_refused() {
    let mut pts = points(&[1.0, 2.0, 3.0, 4.0, 5.0], |d| (-d).exp());
    pts[4].value = 0.0;
    let fit = fit_decay(&pts, DecayModel::Exponential).unwrap();
    assert_eq!(fit.n_floored, 1);
    let zeros = points(&[1.0, 2.0, 3.0, 4.0], |_| 0.0);
    assert!(fit_decay(&zeros, DecayModel::Exponential).is_err());
    let tiny = points(&[1.0, 2.0, 3.0, 4.0], |_| EPS_FLOOR / 2.0);
    assert!(fit_decay(&tiny, DecayModel::Exponential).is_err());
}

#[test]
fn noisy_decay_has_r_squared_in_unit_interval() {
    let noise = [1.3, 0.8, 1.1, 0.7, 1.25, 0.9];
    let pts: Vec<_> = (0..6)
        .map(|k| DiagnosticPoint::new("n", k as f64, (-0.4 * k as f64).exp() * noise[k]))
        .collect();
    let fit = fit_decay(&pts, DecayModel::Exponential).unwrap();
    assert!((0.0..=1.0).contains(&fit.r_squared));
    assert!(fit.rate > 0.2 && fit.rate < 0.6, "{fit:?}");
    assert!(fit.rate_stderr > 0.0);
}

proptest! {
    #[test]
    fn recovers_any_exponential(c in 1e-3f64..1e3, m in -1.0f64..3.0, x0 in 0.0f64..5.0, step in 0.2f64..2.0) {
        let xs: Vec<f64> = (0..7).map(|k| x0 + step * k as f64).collect();
        let pts = points(&xs, |d| c * (-m * d).exp());
        prop_assume!(pts.iter().all(|p| p.value > 1e-10));
        let fit = fit_decay(&pts, DecayModel::Exponential).unwrap();
        prop_assert!((fit.rate - m).abs() < 1e-8);
        prop_assert!((fit.prefactor / c - 1.0).abs() < 1e-8);
    }
}
