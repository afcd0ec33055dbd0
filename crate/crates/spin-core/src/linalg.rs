//! Dense kernels: symmetric eigensolvers on top of LAPACK and singular-value norms.

use std::os::raw::{c_char, c_int};

use ndarray::{Array1, Array2, ArrayView2};
use ndarray_linalg::{JobSvd, SVDDC};

use crate::error::{CoreError, Result};
use crate::C64;

/// Which eigenpairs [`sym_eig`] returns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EigRange {
    All,
    /// Eigenvalues in `(lo, hi]`.
    Values { lo: f64, hi: f64 },
    /// The `count` smallest eigenvalues.
    Lowest(usize),
}

/// Eigen-decomposition of a real symmetric matrix with `dsyevr`.
///
/// Returns ascending eigenvalues and, if `vectors` is set, the eigenvectors as
/// columns of an `n x m` matrix.
pub fn sym_eig(a: ArrayView2<f64>, range: EigRange, vectors: bool) -> Result<(Vec<f64>, Option<Array2<f64>>)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(CoreError::Dimension { expected: n, got: a.ncols() });
    }
    if n == 0 {
        return Ok((Vec::new(), vectors.then(|| Array2::zeros((0, 0)))));
    }
    // Column-major copy; the matrix is symmetric so the transpose is harmless.
    let mut buf: Vec<f64> = a.t().iter().copied().collect();
    let jobz = if vectors { b'V' } else { b'N' } as c_char;
    let uplo = b'L' as c_char;
    let (rng, vl, vu, il, iu) = match range {
        EigRange::All => (b'A', 0.0, 0.0, 1, n as c_int),
        EigRange::Values { lo, hi } => (b'V', lo, hi, 1, n as c_int),
        EigRange::Lowest(k) => (b'I', 0.0, 0.0, 1, k.clamp(1, n) as c_int),
    };
    if rng == b'V' && !(vl < vu) {
        return Ok((Vec::new(), vectors.then(|| Array2::zeros((n, 0)))));
    }
    let rng = rng as c_char;
    let ni = n as c_int;
    let abstol = 0.0f64;
    let mut m: c_int = 0;
    let mut w = vec![0.0f64; n];
    let zcols = if vectors { n } else { 1 };
    let mut z = vec![0.0f64; n * zcols];
    let ldz = if vectors { ni } else { 1 };
    let mut isuppz = vec![0 as c_int; 2 * n];
    let mut work = vec![0.0f64; 1];
    let mut iwork = vec![0 as c_int; 1];
    let mut info: c_int = 0;
    let mut lwork: c_int = -1;
    let mut liwork: c_int = -1;
    for pass in 0..2 {
        unsafe {
            lapack_sys::dsyevr_(
                &jobz, &rng, &uplo, &ni, buf.as_mut_ptr(), &ni, &vl, &vu, &il, &iu, &abstol, &mut m,
                w.as_mut_ptr(), z.as_mut_ptr(), &ldz, isuppz.as_mut_ptr(), work.as_mut_ptr(), &lwork,
                iwork.as_mut_ptr(), &liwork, &mut info,
            );
        }
        if info != 0 {
            return Err(CoreError::Lapack { routine: "dsyevr", info });
        }
        if pass == 0 {
            lwork = work[0] as c_int;
            liwork = iwork[0];
            work = vec![0.0; lwork.max(1) as usize];
            iwork = vec![0; liwork.max(1) as usize];
        }
    }
    let m = m as usize;
    w.truncate(m);
    let vecs = if vectors {
        z.truncate(n * m);
        let zt = Array2::from_shape_vec((m, n), z).expect("eigenvector buffer");
        Some(zt.reversed_axes().as_standard_layout().into_owned())
    } else {
        None
    };
    Ok((w, vecs))
}

/// Eigenpairs of the real symmetric tridiagonal matrix with diagonal `d` and off-diagonal `e`.
pub fn tridiag_eig(d: &[f64], e: &[f64]) -> Result<(Vec<f64>, Array2<f64>)> {
    let n = d.len();
    if n == 0 {
        return Ok((Vec::new(), Array2::zeros((0, 0))));
    }
    if e.len() + 1 != n {
        return Err(CoreError::Dimension { expected: n - 1, got: e.len() });
    }
    let mut dd = d.to_vec();
    let mut ee = e.to_vec();
    ee.push(0.0);
    let mut z = vec![0.0f64; n * n];
    let mut work = vec![0.0f64; (2 * n).saturating_sub(2).max(1)];
    let mut info: c_int = 0;
    let jobz = b'V' as c_char;
    let ni = n as c_int;
    unsafe {
        lapack_sys::dstev_(&jobz, &ni, dd.as_mut_ptr(), ee.as_mut_ptr(), z.as_mut_ptr(), &ni, work.as_mut_ptr(), &mut info);
    }
    if info != 0 {
        return Err(CoreError::Lapack { routine: "dstev", info });
    }
    let zt = Array2::from_shape_vec((n, n), z).expect("eigenvector buffer");
    Ok((dd, zt.reversed_axes().as_standard_layout().into_owned()))
}

/// Singular values, descending.
pub fn singular_values(a: ArrayView2<C64>) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    if a.nrows() == 1 || a.ncols() == 1 {
        return vec![frobenius(a)];
    }
    let owned = Array2::from_shape_vec(a.dim(), a.iter().copied().collect()).expect("shape");
    let (_, s, _) = owned.svddc(JobSvd::None).expect("SVD did not converge");
    s.to_vec()
}

pub fn trace_norm(a: ArrayView2<C64>) -> f64 {
    singular_values(a).iter().sum()
}

pub fn op_norm(a: ArrayView2<C64>) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

pub fn frobenius(a: ArrayView2<C64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigen-decomposition of a complex Hermitian matrix with `zheev`.
/// Ascending eigenvalues, eigenvectors as columns.
pub fn herm_eig(a: ArrayView2<C64>) -> Result<(Vec<f64>, Array2<C64>)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(CoreError::Dimension { expected: n, got: a.ncols() });
    }
    if n == 0 {
        return Ok((Vec::new(), Array2::zeros((0, 0))));
    }
    let mut buf: Vec<C64> = a.t().iter().copied().collect();
    let jobz = b'V' as c_char;
    let uplo = b'L' as c_char;
    let ni = n as c_int;
    let mut w = vec![0.0f64; n];
    let mut rwork = vec![0.0f64; (3 * n).saturating_sub(2).max(1)];
    let mut work = vec![C64::new(0.0, 0.0); 1];
    let mut lwork: c_int = -1;
    let mut info: c_int = 0;
    for pass in 0..2 {
        unsafe {
            lapack_sys::zheev_(
                &jobz, &uplo, &ni, buf.as_mut_ptr() as *mut _, &ni, w.as_mut_ptr(), work.as_mut_ptr() as *mut _,
                &lwork, rwork.as_mut_ptr(), &mut info,
            );
        }
        if info != 0 {
            return Err(CoreError::Lapack { routine: "zheev", info });
        }
        if pass == 0 {
            lwork = (work[0].re as c_int).max(1);
            work = vec![C64::new(0.0, 0.0); lwork as usize];
        }
    }
    let zt = Array2::from_shape_vec((n, n), buf).expect("eigenvector buffer");
    Ok((w, zt.reversed_axes().as_standard_layout().into_owned()))
}

/// Square root of a Hermitian positive semidefinite matrix; small negative
/// eigenvalues from round-off are clipped to zero.
pub fn herm_sqrt(g: ArrayView2<C64>) -> Array2<C64> {
    let n = g.nrows();
    if n == 0 {
        return Array2::zeros((0, 0));
    }
    let sym = (&g + &g.t().mapv(|z| z.conj())).mapv(|z| z * 0.5);
    let (vals, vecs) = herm_eig(sym.view()).expect("Hermitian eigensolver failed");
    let roots: Array1<C64> = vals.iter().map(|v| C64::new(v.max(0.0).sqrt(), 0.0)).collect();
    let scaled = &vecs * &roots.insert_axis(ndarray::Axis(0));
    scaled.dot(&vecs.t().mapv(|z| z.conj()))
}

/// Trace norm of `U M W^*` given only the Gram matrices `U^*U`, `W^*W` and the middle factor.
pub fn factored_trace_norm(gram_u: ArrayView2<C64>, middle: ArrayView2<C64>, gram_w: ArrayView2<C64>) -> f64 {
    let ru = herm_sqrt(gram_u);
    let rw = herm_sqrt(gram_w);
    trace_norm(ru.dot(&middle).dot(&rw).view())
}

/// `A^* B` for complex matrices.
pub fn adjoint_dot(a: ArrayView2<C64>, b: ArrayView2<C64>) -> Array2<C64> {
    a.t().mapv(|z| z.conj()).dot(&b)
}

pub fn adjoint(a: ArrayView2<C64>) -> Array2<C64> {
    a.t().mapv(|z| z.conj())
}

/// Promote a real matrix.
pub fn complexify(a: ArrayView2<f64>) -> Array2<C64> {
    a.mapv(|x| C64::new(x, 0.0))
}

pub fn max_abs_diff(a: ArrayView2<C64>, b: ArrayView2<C64>) -> f64 {
    assert_eq!(a.dim(), b.dim());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
