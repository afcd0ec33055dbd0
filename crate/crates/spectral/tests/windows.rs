mod common;

use common::*;
use ndarray::Array2;
use proptest::prelude::*;
use spectral::{diagonalize, diagonalize_below, droplet_window, matrix_function, window_compress, window_projector, EnergyWindow};
use spin_core::linalg::trace_norm;
use spin_core::{embed_local, ground_projector, BlockOperator, Observable, Support, C64};

#[test]
fn droplet_window_endpoints() {
    let w = droplet_window(2.0, 0.0, false).unwrap();
    assert_eq!((w.lo, w.hi, w.lo_closed, w.hi_closed), (0.5, 1.0, true, false));
    let w = droplet_window(2.0, 0.5, true).unwrap();
    assert_eq!((w.lo, w.hi), (0.5, 0.75));
    let w = droplet_window(1e12, 0.3, false).unwrap();
    assert!((w.lo - 1.0).abs() < 1e-11 && (w.hi - 1.7).abs() < 1e-11);
    assert!(droplet_window(2.0, 1.0, true).is_err());
    assert!(droplet_window(0.5, 0.0, true).is_err());
}

#[test]
fn membership_honours_closure_and_tolerance() {
    let c = EnergyWindow::closed(0.5, 1.0).unwrap();
    let o = EnergyWindow::half_open(0.5, 1.0).unwrap();
    assert!(c.contains(1.0) && !o.contains(1.0));
    assert!(c.contains(1.0 + 1e-13) && !c.contains(1.0 + 1e-11));
    assert!(o.contains(0.5 - 1e-13) && !o.contains(1.0 - 1e-13));
    assert!(!EnergyWindow::open(0.5, 1.0).unwrap().contains(0.5));
    assert!(EnergyWindow::closed(1.0, 0.5).is_err());
    assert!(c.contains_window(&o) && !o.contains_window(&c));
}

#[test]
fn projector_examples() {
    let (chain, _, _, h) = chain_h(2, 2.0, 1.0, 4, 2);
    let sd = diagonalize(&h).unwrap();
    let all = window_projector(&sd, &EnergyWindow::everything(), &chain).unwrap();
    assert!(all.op.max_abs_diff(&BlockOperator::identity_on(&chain)) < 1e-12);
    let g = window_projector(&sd, &EnergyWindow::below(0.5), &chain).unwrap();
    assert!(g.op.max_abs_diff(&ground_projector(&chain)) < 1e-12);
    let empty = window_projector(&sd, &EnergyWindow::open(0.1, 0.2).unwrap(), &chain).unwrap();
    assert_eq!(empty.op.max_abs(), 0.0);
    // splitting at the gap
    let i = EnergyWindow::closed(0.5, 0.75).unwrap();
    let i0 = EnergyWindow::closed(0.0, 0.75).unwrap();
    let pi = window_projector(&sd, &i, &chain).unwrap();
    let pi0 = window_projector(&sd, &i0, &chain).unwrap();
    assert!(pi0.op.max_abs_diff(&pi.op.add(&g.op).unwrap()) < 1e-12);
    assert!(pi.op.matmul(&pi.op).unwrap().max_abs_diff(&pi.op) < 1e-12);
    assert!(pi.op.adjoint().max_abs_diff(&pi.op) < 1e-14);
    let oracle = dense_projector(&h, |e| i.contains(e));
    assert!(max_diff(&pi.op.to_dense(), &oracle) < 1e-10);
}

#[test]
fn localized_window_rank() {
    let (chain, _, _, h) = chain_h(5, 4.0, 4.0, 8, 0);
    let w = droplet_window(4.0, 0.5, true).unwrap();
    let sd = diagonalize_below(&h, w.hi).unwrap();
    let p = window_projector(&sd, &w, &chain).unwrap();
    let trace: f64 = p.op.blocks().map(|(_, b)| b.to_dense().diag().iter().map(|z| z.re).sum::<f64>()).sum();
    let count = sd.levels().iter().filter(|l| (0.75..=1.125).contains(&l.energy)).count();
    assert!((trace - count as f64).abs() < 1e-9);
}

#[test]
fn functional_calculus_examples() {
    let (_, _, _, h) = chain_h(2, 2.0, 1.0, 4, 3);
    let sd = diagonalize(&h).unwrap();
    let everything = EnergyWindow::everything();
    let one = matrix_function(&sd, |_| C64::new(1.0, 0.0), &everything).unwrap();
    assert!(one.max_abs_diff(&BlockOperator::identity(h.dims().to_vec())) < 1e-12);
    let x = matrix_function(&sd, |e| C64::new(e, 0.0), &everything).unwrap();
    assert!(x.max_abs_diff(&h) < 1e-12);
    let i = EnergyWindow::closed(0.5, 1.0).unwrap();
    let t = 2.3;
    let u = matrix_function(&sd, |e| C64::from_polar(1.0, -t * e), &i).unwrap();
    let p = matrix_function(&sd, |_| C64::new(1.0, 0.0), &i).unwrap();
    assert!(u.adjoint().matmul(&u).unwrap().max_abs_diff(&p) < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn compressed_trace_norm_matches_dense(seed in any::<u64>(), s in -3i64..=2) {
        let (chain, _, _, h) = chain_h(3, 2.0, 1.0, seed, 0);
        let sd = diagonalize(&h).unwrap();
        let w = EnergyWindow::closed(0.5, 1.2).unwrap();
        let m = random_dense(seed ^ 1, 4);
        let x = embed_local(&chain, m.view(), Support::new(s, s + 1).unwrap()).unwrap();
        let xw = window_compress(&sd, w, &x).unwrap();
        let p = dense_projector(&h, |e| w.contains(e));
        let full = p.dot(&x.op.to_dense()).dot(&p);
        prop_assert!((trace_norm(xw.matrix.view()) - trace_norm(full.view())).abs() < 1e-10);
        // compressing twice changes nothing
        let again = xw.restrict(&w);
        prop_assert!(max_diff(&again.matrix, &xw.matrix) == 0.0);
    }
}

#[test]
fn identity_compresses_to_identity() {
    let (chain, _, _, h) = chain_h(2, 2.0, 1.0, 4, 3);
    let sd = diagonalize(&h).unwrap();
    let w = EnergyWindow::closed(0.5, 2.0).unwrap();
    let xw = window_compress(&sd, w, &Observable::identity(&chain)).unwrap();
    assert!(max_diff(&xw.matrix, &Array2::eye(xw.dim())) < 1e-12);
    assert!(xw.energies.iter().all(|&e| w.contains(e)));
}
