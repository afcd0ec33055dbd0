mod common;

use common::{full_spectrum, op_norm, setup, Dense};
use diagnostics::{fermi_check, fermi_transition, hadamard_bound};
use ndarray::Array2;
use spin_core::{BlockOperator, Observable, C64};

fn indicator(cond: bool) -> C64 {
    C64::new(if cond { 1.0 } else { 0.0 }, 0.0)
}

#[test]
fn hadamard_bound_values() {
    assert_eq!(hadamard_bound(1.3, 2.0, 0.0), 4.0);
    assert!((hadamard_bound(0.5, 1.0, 2.0) - 4.0 * (-1.0f64).exp()).abs() < 1e-15);
    assert!(hadamard_bound(1.0, 1.0, 3.0) < hadamard_bound(1.0, 1.0, 2.0));
}

#[test]
fn transition_matches_dense() {
    let s = setup(3, 2.0, 1.0, 41, 0);
    let sd = full_spectrum(&s);
    let d = Dense::new(&s.h);
    let x = common::random_local(&s.chain, 2, -1, 2);
    for (e, e2) in [(0.5, 1.0), (1.0, 4.0), (-1.0, 0.1), (2.0, 2.5)] {
        let low = d.function(|v| indicator(v <= e));
        let high = d.function(|v| indicator(v > e2));
        let want = op_norm(&low.dot(&x.op.to_dense()).dot(&high));
        let got = fermi_transition(&sd, &x.op, e, e2).unwrap();
        assert!((got - want).abs() < 1e-10, "({e},{e2}): {got} vs {want}");
    }
    assert!(fermi_transition(&sd, &x.op, 1.0, 1.0).is_err());
}

#[test]
fn functions_of_h_do_not_cross() {
    let s = setup(3, 2.0, 1.0, 41, 1);
    let sd = full_spectrum(&s);
    let d = Dense::new(&s.h);
    let g: Array2<C64> = d.function(|e| C64::new(e.sin(), e));
    let x = BlockOperator::from_dense(s.chain.dims(), g.view(), 0.0).unwrap();
    for (e, e2) in [(0.5, 0.6), (1.0, 3.0)] {
        assert!(fermi_transition(&sd, &x, e, e2).unwrap() < 1e-10);
    }
}

#[test]
fn certified_and_exhaustive_agree() {
    for index in 0..2 {
        let s = setup(3, 2.0, 1.0, 42, index);
        let sd = full_spectrum(&s);
        let theta = s.params.fermi_theta();
        let x = Observable::sigma_x(&s.chain, 0).unwrap();
        let fast = fermi_check(&sd, &x, theta, false).unwrap();
        let full = fermi_check(&sd, &x, theta, true).unwrap();
        assert_eq!(full.evaluated, full.pairs);
        assert!(fast.evaluated <= full.evaluated);
        assert_eq!(fast.violations, 0);
        assert_eq!(full.violations, 0);
        assert!(full.worst_ratio <= 1.0);
    }
}

#[test]
fn bound_holds_on_a_grid() {
    let s = setup(5, 2.0, 1.0, 43, 0);
    assert_eq!(s.params.beta, 0.25);
    let sd = full_spectrum(&s);
    let theta = s.params.fermi_theta();
    let x = Observable::sigma_x(&s.chain, 0).unwrap();
    let top = sd.levels().last().unwrap().energy;
    let mut checked = 0;
    for a in 0..5 {
        for b in 0..4 {
            let e = top * a as f64 / 6.0;
            let e2 = e + 0.05 + top * (b as f64 + 1.0) / 10.0;
            let f = fermi_transition(&sd, &x.op, e, e2).unwrap();
            assert!(f <= hadamard_bound(theta, 1.0, e2 - e) * (1.0 + 1e-12), "({e},{e2}): {f}");
            checked += 1;
        }
    }
    assert_eq!(checked, 20);
}

#[test]
fn grid_matches_single_transitions() {
    let s = setup(4, 2.0, 1.0, 44, 0);
    let sd = full_spectrum(&s);
    let theta = s.params.fermi_theta();
    let x = Observable::sigma_x(&s.chain, 1).unwrap();
    let grid = diagnostics::fermi_grid(&sd, &x, theta, 5, 4).unwrap();
    assert_eq!(grid.len(), 20);
    for p in grid {
        assert!(p.e < p.e2);
        let direct = fermi_transition(&sd, &x.op, p.e, p.e2).unwrap();
        assert!((p.norm - direct).abs() < 1e-10, "({}, {}): {} vs {direct}", p.e, p.e2, p.norm);
        assert!(p.norm <= p.bound);
        assert_eq!(p.bound, hadamard_bound(theta, 1.0, p.e2 - p.e));
    }
}
