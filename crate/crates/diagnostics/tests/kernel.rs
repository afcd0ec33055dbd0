mod common;

use common::{full_spectrum, setup, trace_norm, Dense};
use diagnostics::{dl_kernel, sandwich_norm, DlKernel};
use ndarray::Array2;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral::{droplet_window, EnergyWindow};
use spin_core::{minus_projector, BlockOperator, Observable, Support, C64};

fn number_dense(s: &common::Setup, i: i64) -> Array2<C64> {
    Observable::number(&s.chain, i).unwrap().op.to_dense()
}

/// `Σ_E ‖N_i P_E N_j‖₁` from a dense diagonalization, eigenvalues grouped by the same tolerance.
fn dense_kernel(s: &common::Setup, d: &Dense, w: &EnergyWindow, i: i64, j: i64, tol: f64) -> f64 {
    let (ni, nj) = (number_dense(s, i), number_dense(s, j));
    let inside: Vec<usize> = (0..d.w.len()).filter(|&k| w.contains(d.w[k])).collect();
    let mut total = 0.0;
    let mut start = 0;
    while start < inside.len() {
        let mut end = start + 1;
        while end < inside.len() && d.w[inside[end]] - d.w[inside[end - 1]] <= tol {
            end += 1;
        }
        let cols: Vec<usize> = inside[start..end].to_vec();
        let v = d.v.select(ndarray::Axis(1), &cols);
        let p = v.dot(&common::adj(&v));
        total += trace_norm(&ni.dot(&p).dot(&nj));
        start = end;
    }
    total
}

#[test]
fn matches_dense_correlator() {
    for (seed, lambda) in [(1, 0.5), (2, 1.5), (3, 0.0)] {
        let s = setup(3, 2.0, lambda, seed, 0);
        let sd = full_spectrum(&s);
        let d = Dense::new(&s.h);
        let w = EnergyWindow::closed(0.4, 2.0).unwrap();
        let kernel = DlKernel::new(&s.chain, &sd, &w).unwrap();
        for (i, j) in [(-3, 3), (-1, 2), (0, 0), (2, -2)] {
            let got = kernel.value(i, j).unwrap();
            let want = dense_kernel(&s, &d, &w, i, j, sd.cluster_tol());
            assert!((got - want).abs() < 1e-10 * want.max(1.0), "λ={lambda} ({i},{j}): {got} vs {want}");
        }
    }
}

#[test]
fn diagonal_is_bounded_by_rank() {
    let s = setup(4, 2.0, 1.0, 5, 3);
    let sd = full_spectrum(&s);
    let w = droplet_window(2.0, 0.0, false).unwrap();
    let rank = sd.window_levels(&w).unwrap().len() as f64;
    for i in -4..=4 {
        let v = dl_kernel(&s.chain, &sd, i, i, &w).unwrap();
        assert!(v >= 0.0 && v <= rank + 1e-12, "site {i}: {v} > {rank}");
    }
}

#[test]
fn vanishes_below_the_gap() {
    let s = setup(4, 2.0, 1.0, 5, 1);
    let sd = full_spectrum(&s);
    let w = EnergyWindow::below(0.5);
    for (i, j) in [(0, 0), (-2, 3)] {
        assert_eq!(dl_kernel(&s.chain, &sd, i, j, &w).unwrap(), 0.0);
    }
}

#[test]
fn clean_chain_is_reflection_symmetric() {
    let s = setup(4, 2.0, 0.0, 0, 0);
    let sd = full_spectrum(&s);
    let w = droplet_window(2.0, 0.0, false).unwrap();
    let kernel = DlKernel::new(&s.chain, &sd, &w).unwrap();
    for (i, j) in [(1, 3), (0, 4), (-2, 1), (2, 2)] {
        let a = kernel.value(i, j).unwrap();
        let b = kernel.value(-i, -j).unwrap();
        assert!((a - b).abs() < 1e-9, "({i},{j}): {a} vs {b}");
    }
}

#[test]
fn sandwich_trivial_cases() {
    let s = setup(3, 2.0, 1.0, 4, 0);
    let sd = full_spectrum(&s);
    let w = EnergyWindow::closed(0.4, 1.6).unwrap();
    let one = BlockOperator::identity_on(&s.chain);
    let zero = sandwich_norm(&sd, &one, |_| C64::new(0.0, 0.0), &one, &w).unwrap();
    assert_eq!(zero, 0.0);
    let rank = sd.window_levels(&w).unwrap().len() as f64;
    let proj = sandwich_norm(&sd, &one, |_| C64::new(1.0, 0.0), &one, &w).unwrap();
    assert!((proj - rank).abs() < 1e-10, "{proj} vs {rank}");
}

#[test]
fn sandwich_matches_dense() {
    let s = setup(3, 3.0, 1.0, 9, 2);
    let sd = full_spectrum(&s);
    let d = Dense::new(&s.h);
    let w = EnergyWindow::closed(0.0, 2.5).unwrap();
    let a = common::random_local(&s.chain, 1, -2, 2);
    let b = common::random_local(&s.chain, 2, 1, 2);
    let g = |e: f64| C64::from_polar(0.5 + e.sin().abs(), 3.0 * e);
    let got = sandwich_norm(&sd, &a.op, g, &b.op, &w).unwrap();
    let gw = d.function(|e| if w.contains(e) { g(e) } else { C64::new(0.0, 0.0) });
    let want = trace_norm(&a.op.to_dense().dot(&gw).dot(&b.op.to_dense()));
    assert!((got - want).abs() < 1e-9 * want.max(1.0), "{got} vs {want}");
}

#[test]
fn minus_projector_sandwich_bounded_by_site_sum() {
    for index in 0..4 {
        let s = setup(3, 2.0, 1.0, 11, index);
        let sd = full_spectrum(&s);
        let w = droplet_window(2.0, 0.0, false).unwrap();
        let (sx, sy) = (Support::new(-3, -2).unwrap(), Support::new(1, 2).unwrap());
        let px = minus_projector(&s.chain, sx).unwrap();
        let py = minus_projector(&s.chain, sy).unwrap();
        let chi = |_| C64::new(1.0, 0.0);
        let lhs = sandwich_norm(&sd, &px.op, chi, &py.op, &w).unwrap();
        let mut rhs = 0.0;
        for i in sx.sites() {
            for j in sy.sites() {
                let ni = Observable::number(&s.chain, i).unwrap();
                let nj = Observable::number(&s.chain, j).unwrap();
                rhs += sandwich_norm(&sd, &ni.op, chi, &nj.op, &w).unwrap();
            }
        }
        assert!(lhs <= rhs + 1e-10, "realization {index}: {lhs} > {rhs}");
    }
}

#[test]
fn kernel_dominates_projector_and_phase_functions() {
    let s = setup(4, 3.0, 2.0, 21, 0);
    let sd = full_spectrum(&s);
    let w = droplet_window(3.0, 0.25, true).unwrap();
    let kernel = DlKernel::new(&s.chain, &sd, &w).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (i, j) in [(-3, 2), (0, 1), (-4, 4)] {
        let k = kernel.value(i, j).unwrap();
        let ni = Observable::number(&s.chain, i).unwrap();
        let nj = Observable::number(&s.chain, j).unwrap();
        let chi = sandwich_norm(&sd, &ni.op, |_| C64::new(1.0, 0.0), &nj.op, &w).unwrap();
        assert!(chi <= k + 1e-10, "χ: {chi} > {k}");
        for _ in 0..20 {
            let t: f64 = rng.gen_range(-50.0..50.0);
            let v = sandwich_norm(&sd, &ni.op, |e| C64::from_polar(1.0, -t * e), &nj.op, &w).unwrap();
            assert!(v <= k + 1e-10, "t={t}: {v} > {k}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn kernel_bounds_any_unimodular_function(seed in 0u64..1000, i in -3i64..=3, j in -3i64..=3, a in -20.0f64..20.0, b in -5.0f64..5.0) {
        let s = setup(3, 2.5, 1.0, seed, 0);
        let sd = full_spectrum(&s);
        let w = droplet_window(2.5, 0.0, false).unwrap();
        let k = dl_kernel(&s.chain, &sd, i, j, &w).unwrap();
        let ni = Observable::number(&s.chain, i).unwrap();
        let nj = Observable::number(&s.chain, j).unwrap();
        let v = sandwich_norm(&sd, &ni.op, |e| C64::from_polar(1.0, a * e + b * e * e), &nj.op, &w).unwrap();
        prop_assert!(v <= k + 1e-10);
    }
}
