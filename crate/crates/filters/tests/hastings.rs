mod common;

use common::{random_local, sigma_x_at, spectrum};
use filters::{filter_f, hastings_residual, insertion_check, kf_window, quadrature_integral, FilterError, FilterSpec};
use ndarray::Array2;
use proptest::prelude::*;
use spectral::{diagonalize_below, EnergyWindow, WindowBasis};
use spin_core::linalg::max_abs_diff;
use spin_core::{BlockOperator, C64};

fn default_filter() -> filters::Filter {
    filter_f(FilterSpec::default()).unwrap()
}

/// `X f(H)` and `f(H) Y` in the eigenbasis, straight from functional calculus.
fn eig_function(full: &WindowBasis, g: impl Fn(f64) -> f64) -> Array2<C64> {
    Array2::from_diag(&full.energies().iter().map(|&e| C64::new(g(e), 0.0)).collect::<ndarray::Array1<_>>())
}

#[test]
fn kf_window_example() {
    let k = EnergyWindow::closed(0.5, 0.75).unwrap();
    let kf = kf_window(&k, (0.75, 2.0)).unwrap();
    assert_eq!((kf.lo, kf.hi), (-1.0, 0.75));
    assert!(kf.lo_closed && kf.hi_closed);
}

#[test]
fn insertion_identity_random_observables() {
    let f = default_filter();
    let k = EnergyWindow::closed(0.5, 1.0).unwrap();
    let mut nontrivial = 0;
    for seed in 0..6u64 {
        let (chain, sd) = spectrum(3, 2.0, 1.0, 11, seed);
        let x = random_local(&chain, 100 + seed, -2, 2);
        let y = random_local(&chain, 200 + seed, 1, 2);
        let r = insertion_check(&sd, &x.op, &y.op, &f, &k).unwrap();
        assert!(r.residual < 1e-10, "seed {seed}: {}", r.residual);
        if r.magnitude > 1e-3 {
            nontrivial += 1;
        }
        assert_eq!((r.kf.lo, r.kf.hi), (-1.5, 1.5));
    }
    assert!(nontrivial >= 3, "only {nontrivial} realizations with levels in the window");
}

#[test]
fn insertion_with_filter_outside_spectrum_vanishes() {
    let far = filter_f(FilterSpec::new(101.0, 100.0, 102.0, 0.5)).unwrap();
    let (chain, sd) = spectrum(3, 2.0, 1.0, 5, 0);
    let x = random_local(&chain, 1, -1, 2);
    let y = random_local(&chain, 2, 0, 2);
    let r = insertion_check(&sd, &x.op, &y.op, &far, &EnergyWindow::closed(0.5, 1.0).unwrap()).unwrap();
    assert_eq!(r.residual, 0.0);
    assert_eq!(r.magnitude, 0.0);
}

#[test]
fn capped_spectrum_is_rejected() {
    let (chain, sd) = spectrum(2, 2.0, 1.0, 5, 0);
    let _ = sd;
    let params = hamiltonian::ChainParams::new(2.0, 1.0, None, 2, hamiltonian::DisorderSpec::uniform(5)).unwrap();
    let omega = hamiltonian::sample_disorder(&params.disorder, 2, 0).unwrap();
    let h = hamiltonian::build(&chain, &params, &omega).unwrap();
    let capped = diagonalize_below(&h, 1.0).unwrap();
    let x = sigma_x_at(&chain, 0);
    let f = default_filter();
    let k = EnergyWindow::closed(0.5, 0.75).unwrap();
    assert!(matches!(insertion_check(&capped, &x.op, &x.op, &f, &k), Err(FilterError::IncompleteSpectrum)));
}

#[test]
fn identity_on_the_right_matches_quadrature() {
    let f = default_filter();
    let quad = f.fhat_quadrature(300.0, 0.05);
    let (chain, sd) = spectrum(3, 2.0, 1.0, 3, 1);
    let x = random_local(&chain, 7, -1, 2);
    let one = BlockOperator::identity_on(&chain);
    let full = WindowBasis::new(&sd, EnergyWindow::everything()).unwrap();
    let exact = full.compress(&x.op).dot(&eig_function(&full, |e| f.eval(e)));
    let by_quadrature = quadrature_integral(&sd, &x.op, None, &quad).unwrap();
    let err = max_abs_diff(exact.view(), by_quadrature.view());
    println!("Y = 1: quadrature vs eigenbasis {err:e}");
    assert!(err < 1e-6);
    let r = hastings_residual(&sd, &x.op, &one, &f, &quad, 1e-6).unwrap();
    assert!(r.residual < 1e-12, "{}", r.residual);
    assert!(!r.warning, "quadrature bound {}", r.quadrature_error);
}

#[test]
fn identity_on_the_left_is_exact() {
    let f = default_filter();
    let quad = f.fhat_quadrature(300.0, 0.1);
    let (chain, sd) = spectrum(2, 2.0, 1.0, 3, 2);
    let y = random_local(&chain, 8, 0, 2);
    let one = BlockOperator::identity_on(&chain);
    let r = hastings_residual(&sd, &one, &y.op, &f, &quad, 1e-6).unwrap();
    assert!(r.residual < 1e-12 + r.quadrature_error, "{r:?}");
    assert!(r.residual < 1e-12);
    let full = WindowBasis::new(&sd, EnergyWindow::everything()).unwrap();
    let exact = eig_function(&full, |e| f.eval(e)).dot(&full.compress(&y.op));
    let by_quadrature = quadrature_integral(&sd, &one, Some(&y.op), &quad).unwrap();
    assert!(max_abs_diff(exact.view(), by_quadrature.view()) < 1e-6);
}

#[test]
fn eigenbasis_integral_matches_explicit_quadrature() {
    // the exact residual uses Σ_c Y_ac X_cb f(E_a + E_b - E_c); the explicit
    // quadrature of e^{-irH} Y τ_r(X) is an independent route to the same matrix
    let f = default_filter();
    let quad = f.fhat_quadrature(300.0, 0.1);
    let (chain, sd) = spectrum(2, 2.0, 1.0, 9, 4);
    let x = random_local(&chain, 21, -2, 2);
    let y = random_local(&chain, 22, 1, 2);
    let full = WindowBasis::new(&sd, EnergyWindow::everything()).unwrap();
    let fm = eig_function(&full, |e| f.eval(e));
    let (xe, ye) = (full.compress(&x.op), full.compress(&y.op));
    let lhs = xe.dot(&fm).dot(&ye);
    let integral = quadrature_integral(&sd, &x.op, Some(&y.op), &quad).unwrap();
    let by_quadrature = spin_core::linalg::op_norm((&lhs - &integral).view());
    let r = hastings_residual(&sd, &x.op, &y.op, &f, &quad, 1e-6).unwrap();
    println!("residual {:e}, by quadrature {by_quadrature:e}, bound {:e}", r.residual, r.quadrature_error);
    assert!((r.residual - by_quadrature).abs() < 1e-6);
    assert!(!r.warning);
}

#[test]
fn quadrature_bound_dominates_sampled_error() {
    let f = default_filter();
    for &(t_max, dt) in &[(20.0, 0.1), (60.0, 0.1), (300.0, 0.05)] {
        let quad = f.fhat_quadrature(t_max, dt);
        let bound = filters::reconstruction_bound(&f, &quad, -4.0, 8.0);
        let sampled = filters::reconstruction_error(&f, &quad, -4.0, 8.0);
        println!("T {t_max}: sampled {sampled:e}, bound {bound:e}");
        assert!(sampled <= bound * (1.0 + 1e-6) + 1e-12);
    }
    // shifted copies of the support overlap the range
    let coarse = f.fhat_quadrature(300.0, 1.0);
    assert!(filters::reconstruction_bound(&f, &coarse, -4.0, 8.0).is_infinite());
}

#[test]
fn residual_shrinks_with_distance() {
    let f = default_filter();
    let quad = f.fhat_quadrature(300.0, 0.05);
    let mut near = Vec::new();
    let mut far = Vec::new();
    for index in 0..8u64 {
        let (chain, sd) = spectrum(3, 2.0, 1.0, 17, index);
        let x = sigma_x_at(&chain, -2);
        let r1 = hastings_residual(&sd, &x.op, &sigma_x_at(&chain, -1).op, &f, &quad, 1e-6).unwrap();
        let r3 = hastings_residual(&sd, &x.op, &sigma_x_at(&chain, 1).op, &f, &quad, 1e-6).unwrap();
        near.push(r1.residual);
        far.push(r3.residual);
    }
    let median = |v: &mut Vec<f64>| {
        v.sort_by(f64::total_cmp);
        0.5 * (v[v.len() / 2 - 1] + v[v.len() / 2])
    };
    let (m1, m3) = (median(&mut near), median(&mut far));
    println!("median residual: dist 1 {m1:e}, dist 3 {m3:e}");
    assert!(m3 < m1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]
    #[test]
    fn insertion_identity_for_random_filters(
        index in 0u64..1000,
        theta2 in 0.0f64..1.0,
        rise in 0.2f64..1.0,
        plateau in 0.0f64..1.5,
        hi in 0.6f64..1.5,
    ) {
        let f = filter_f(FilterSpec::new(theta2 + rise, theta2, theta2 + rise + plateau, 0.5)).unwrap();
        let (chain, sd) = spectrum(3, 2.0, 1.0, 23, index);
        let x = random_local(&chain, index, -3, 3);
        let y = random_local(&chain, index + 1, 0, 3);
        let k = EnergyWindow::closed(0.5, hi).unwrap();
        let r = insertion_check(&sd, &x.op, &y.op, &f, &k).unwrap();
        prop_assert!(r.residual < 1e-10);
    }
}
