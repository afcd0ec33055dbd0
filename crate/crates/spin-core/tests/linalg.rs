mod common;

use common::*;
use ndarray::Array2;
use ndarray_linalg::Eigh;
use rand::Rng;
use spin_core::linalg::{factored_trace_norm, herm_sqrt, op_norm, sym_eig, trace_norm, tridiag_eig, EigRange};
use spin_core::C64;

fn random_symmetric(seed: u64, n: usize) -> Array2<f64> {
    let mut r = rng(seed);
    let mut a = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..=i {
            let v: f64 = r.gen_range(-1.0..1.0);
            a[[i, j]] = v;
            a[[j, i]] = v;
        }
    }
    a
}

#[test]
fn dsyevr_agrees_with_reference_eigensolver() {
    let a = random_symmetric(3, 40);
    let (w, v) = sym_eig(a.view(), EigRange::All, true).unwrap();
    let (w_ref, _) = a.eigh(ndarray_linalg::UPLO::Lower).unwrap();
    for (x, y) in w.iter().zip(w_ref.iter()) {
        assert!((x - y).abs() < 1e-12);
    }
    let v = v.unwrap();
    let resid = a.dot(&v) - &v * &ndarray::Array1::from(w.clone()).insert_axis(ndarray::Axis(0));
    assert!(resid.iter().map(|x| x.abs()).fold(0.0, f64::max) < 1e-12);
    let gram = v.t().dot(&v) - Array2::<f64>::eye(40);
    assert!(gram.iter().map(|x| x.abs()).fold(0.0, f64::max) < 1e-12);

    let (low, _) = sym_eig(a.view(), EigRange::Lowest(1), false).unwrap();
    assert!((low[0] - w[0]).abs() < 1e-12);
    let (part, pv) = sym_eig(a.view(), EigRange::Values { lo: w[0] - 1.0, hi: 0.0 }, true).unwrap();
    assert_eq!(part.len(), w.iter().filter(|&&x| x <= 0.0).count());
    assert_eq!(pv.unwrap().ncols(), part.len());
}

#[test]
fn tridiagonal_solver_matches_dense() {
    let d = [1.0, 2.0, 0.5, -1.0];
    let e = [0.3, -0.2, 0.7];
    let (w, _) = tridiag_eig(&d, &e).unwrap();
    let mut a = Array2::zeros((4, 4));
    for i in 0..4 {
        a[[i, i]] = d[i];
    }
    for i in 0..3 {
        a[[i, i + 1]] = e[i];
        a[[i + 1, i]] = e[i];
    }
    let (w_ref, _) = sym_eig(a.view(), EigRange::All, false).unwrap();
    for (x, y) in w.iter().zip(w_ref.iter()) {
        assert!((x - y).abs() < 1e-13);
    }
}

#[test]
fn factored_trace_norm_matches_direct_product() {
    let mut r = rng(11);
    let u = Array2::from_shape_fn((9, 3), |_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
    let w = Array2::from_shape_fn((7, 3), |_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
    let m = random_matrix(&mut r, 3);
    let direct = trace_norm(u.dot(&m).dot(&w.t().mapv(|z| z.conj())).view());
    let gu = u.t().mapv(|z| z.conj()).dot(&u);
    let gw = w.t().mapv(|z| z.conj()).dot(&w);
    let fact = factored_trace_norm(gu.view(), m.view(), gw.view());
    assert!((direct - fact).abs() < 1e-10 * direct);
    let s = herm_sqrt(gu.view());
    assert!(max_diff(&s.dot(&s), &gu) < 1e-12);
}

#[test]
fn hermitian_eigensolver_reconstructs() {
    let mut r = rng(5);
    let a = random_matrix(&mut r, 12);
    let h = &a + &a.t().mapv(|z| z.conj());
    let (w, v) = spin_core::linalg::herm_eig(h.view()).unwrap();
    assert!(w.windows(2).all(|p| p[0] <= p[1]));
    let d = Array2::from_diag(&ndarray::Array1::from_iter(w.iter().map(|&x| C64::new(x, 0.0))));
    let back = v.dot(&d).dot(&v.t().mapv(|z| z.conj()));
    assert!(max_diff(&back, &h) < 1e-12);
}

#[test]
fn norms_of_strided_slices() {
    let a = Array2::from_shape_fn((5, 4), |(i, j)| C64::new(i as f64 - j as f64, 0.5 * j as f64));
    for (rows, cols) in [(0..3, 2..3), (1..2, 0..4), (2..3, 3..4), (0..5, 1..3), (0..0, 0..2)] {
        let v = a.slice(ndarray::s![rows.clone(), cols.clone()]);
        let owned = v.to_owned();
        let frob = owned.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let t = trace_norm(v);
        let o = op_norm(v);
        assert!(o <= t + 1e-12 && o <= frob + 1e-12);
        if rows.len() == 1 || cols.len() == 1 {
            assert!((o - frob).abs() < 1e-12 && (t - frob).abs() < 1e-12);
        }
        assert!((trace_norm(owned.view()) - t).abs() < 1e-12);
    }
}
