mod common;

use common::*;
use dynamics::{heisenberg, heisenberg_truncated, DynamicsError};
use spectral::{diagonalize, diagonalize_below, droplet_window, matrix_function, window_compress, EnergyWindow, WindowBasis};
use spin_core::{norm, NormKind, Observable, C64};

#[test]
fn time_zero_and_functions_of_h_are_fixed() {
    let s = setup(2, 2.0, 1.0, 3, 0);
    let sd = diagonalize(&s.h).unwrap();
    let x = random_local(&s.chain, 1, -1, 2);
    assert!(heisenberg(&sd, &x.op, 0.0).unwrap().max_abs_diff(&x.op) < 1e-12);
    let g = matrix_function(&sd, |e| C64::new((3.0 * e).cos(), e), &EnergyWindow::everything()).unwrap();
    assert!(heisenberg(&sd, &g, 7.1).unwrap().max_abs_diff(&g) < 1e-12);
}

#[test]
fn matches_dense_propagator_and_group_law() {
    let s = setup(2, 2.0, 1.0, 4, 1);
    let sd = diagonalize(&s.h).unwrap();
    let dense = Dense::new(&s.h);
    let x = random_local(&s.chain, 2, 0, 2);
    let xd = x.op.to_dense();
    for t in [0.3, 4.0, 55.5] {
        let u = dense.unitary(t);
        let oracle = u.dot(&xd).dot(&adj(&u));
        assert!(max_diff(&heisenberg(&sd, &x.op, t).unwrap().to_dense(), &oracle) < 1e-10);
    }
    let ts = heisenberg(&sd, &heisenberg(&sd, &x.op, 1.3).unwrap(), 2.4).unwrap();
    assert!(ts.max_abs_diff(&heisenberg(&sd, &x.op, 3.7).unwrap()) < 1e-10);
}

#[test]
fn evolution_is_isometric_and_conserves_energy() {
    let s = setup(3, 2.0, 1.0, 5, 0);
    let sd = diagonalize(&s.h).unwrap();
    let sx = Observable::sigma_x(&s.chain, 0).unwrap();
    for t in [1.0, 10.0, 100.0] {
        assert!((norm(&heisenberg(&sd, &sx.op, t).unwrap(), NormKind::Operator) - 1.0).abs() < 1e-10);
    }
    let x = random_local(&s.chain, 9, 1, 2);
    let xt = heisenberg(&sd, &x.op, 2.5).unwrap();
    for k in [NormKind::Operator, NormKind::Trace, NormKind::Frobenius] {
        let (a, b) = (norm(&x.op, k), norm(&xt, k));
        assert!((a - b).abs() < 1e-10 * a);
    }
    // diagonal elements in the eigenbasis are time independent
    let basis = WindowBasis::new(&sd, EnergyWindow::everything()).unwrap();
    let before = basis.compress(&x.op);
    let after = basis.compress(&xt);
    for i in 0..basis.dim() {
        assert!((before[[i, i]] - after[[i, i]]).norm() < 1e-10);
    }
}

#[test]
fn incomplete_spectrum_is_refused() {
    let s = setup(2, 4.0, 4.0, 1, 0);
    let sd = diagonalize_below(&s.h, 1.0).unwrap();
    let x = Observable::sigma_x(&s.chain, 0).unwrap();
    assert!(matches!(heisenberg(&sd, &x.op, 1.0), Err(DynamicsError::IncompleteSpectrum)));
}

#[test]
fn truncated_evolution_identities() {
    let s = setup(3, 2.0, 1.0, 6, 2);
    let sd = diagonalize(&s.h).unwrap();
    let x = random_local(&s.chain, 3, -1, 2);
    let everything = EnergyWindow::everything();
    let full = heisenberg(&sd, &x.op, 1.9).unwrap();
    assert!(heisenberg_truncated(&sd, &x.op, 1.9, &everything).unwrap().max_abs_diff(&full) < 1e-12);
    // only the zero-energy state gets a (trivial) phase
    let zero = EnergyWindow::below(0.5);
    assert!(heisenberg_truncated(&sd, &x.op, 1.9, &zero).unwrap().max_abs_diff(&x.op) < 1e-12);
    // (τ^B_t X)_B = (τ_t X)_B = τ_t(X_B)
    let b = droplet_window(2.0, 0.0, false).unwrap();
    let t = 3.7;
    let basis = WindowBasis::new(&sd, b).unwrap();
    let lhs = basis.compress(&heisenberg_truncated(&sd, &x.op, t, &b).unwrap());
    let mid = basis.compress(&heisenberg(&sd, &x.op, t).unwrap());
    let xb = window_compress(&sd, b, &x).unwrap();
    let rhs = dynamics::conjugate_phases(&xb.matrix, &xb.energies, t);
    assert!(max_diff(&lhs, &mid) < 1e-10);
    assert!(max_diff(&lhs, &rhs) < 1e-10);
    // dense oracle for the truncated propagator
    let dense = Dense::new(&s.h);
    let u = dense.truncated_unitary(t, &b);
    let oracle = u.dot(&x.op.to_dense()).dot(&adj(&u));
    assert!(max_diff(&heisenberg_truncated(&sd, &x.op, t, &b).unwrap().to_dense(), &oracle) < 1e-10);
    // capped spectra suffice for truncated evolution
    let capped = diagonalize_below(&s.h, b.hi).unwrap();
    let ct = heisenberg_truncated(&capped, &x.op, t, &b).unwrap();
    assert!(ct.max_abs_diff(&heisenberg_truncated(&sd, &x.op, t, &b).unwrap()) < 1e-10);
}
