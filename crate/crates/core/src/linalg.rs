//! Minimal dense complex linear algebra on top of LAPACK/BLAS (OpenBLAS).
//!
//! Matrices are column-major so they can be handed to Fortran routines
//! without copies. Only the handful of operations the ensemble module needs
//! are wrapped: Hermitian and general eigensolves, Cholesky log-determinants,
//! and GEMM.

use crate::error::{CoreError, Result};
use num_complex::Complex64;
use std::os::raw::c_char;

/// Column-major complex matrix.
#[derive(Debug, Clone)]
pub struct CMatrix {
    pub n_rows: usize,
    pub n_cols: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        CMatrix { n_rows, n_cols, data: vec![Complex64::ZERO; n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i + j * self.n_rows]
    }

    /// Hermitian conjugate.
    pub fn dagger(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.n_cols, self.n_rows);
        for j in 0..self.n_cols {
            for i in 0..self.n_rows {
                out[(j, i)] = self.at(i, j).conj();
            }
        }
        out
    }

    /// Max |M - M^H| entry; 0 for exactly Hermitian matrices.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.n_cols {
            for i in 0..=j {
                let d = (self.at(i, j) - self.at(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn add_scaled_identity(&mut self, c: Complex64) {
        let n = self.n_rows.min(self.n_cols);
        for i in 0..n {
            self[(i, i)] += c;
        }
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i + j * self.n_rows]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        let n = self.n_rows;
        &mut self.data[i + j * n]
    }
}

#[allow(clippy::too_many_arguments)]
extern "C" {
    fn zheevd_(
        jobz: *const c_char, uplo: *const c_char, n: *const i32, a: *mut Complex64,
        lda: *const i32, w: *mut f64, work: *mut Complex64, lwork: *const i32,
        rwork: *mut f64, lrwork: *const i32, iwork: *mut i32, liwork: *const i32,
        info: *mut i32,
    );
    fn zgeev_(
        jobvl: *const c_char, jobvr: *const c_char, n: *const i32, a: *mut Complex64,
        lda: *const i32, w: *mut Complex64, vl: *mut Complex64, ldvl: *const i32,
        vr: *mut Complex64, ldvr: *const i32, work: *mut Complex64, lwork: *const i32,
        rwork: *mut f64, info: *mut i32,
    );
    fn zpotrf_(
        uplo: *const c_char, n: *const i32, a: *mut Complex64, lda: *const i32,
        info: *mut i32,
    );
    fn zgemm_(
        transa: *const c_char, transb: *const c_char, m: *const i32, n: *const i32,
        k: *const i32, alpha: *const Complex64, a: *const Complex64, lda: *const i32,
        b: *const Complex64, ldb: *const i32, beta: *const Complex64, c: *mut Complex64,
        ldc: *const i32,
    );
    fn openblas_set_num_threads(n: i32);
}

/// Cap the BLAS thread pool. Monte Carlo parallelism lives above BLAS, so the
/// default is 1; large single eigensolves may raise it temporarily.
pub fn set_blas_threads(n: usize) {
    unsafe { openblas_set_num_threads(n.max(1) as i32) }
}

/// Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian matrix.
pub fn eigh(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = m.n_rows;
    assert_eq!(n, m.n_cols);
    let mut a = m.clone();
    let mut w = vec![0.0f64; n];
    let (jobz, uplo) = (b'V' as c_char, b'L' as c_char);
    let ni = n as i32;
    let mut info = 0i32;
    // workspace query
    let (mut wkopt, mut rwkopt, mut iwkopt) = (Complex64::ZERO, 0.0f64, 0i32);
    let m1 = -1i32;
    unsafe {
        zheevd_(&jobz, &uplo, &ni, a.data.as_mut_ptr(), &ni, w.as_mut_ptr(), &mut wkopt, &m1,
                &mut rwkopt, &m1, &mut iwkopt, &m1, &mut info);
    }
    if info != 0 {
        return Err(CoreError::Lapack { routine: "zheevd(query)", info });
    }
    let lwork = wkopt.re as i32;
    let lrwork = rwkopt as i32;
    let liwork = iwkopt;
    let mut work = vec![Complex64::ZERO; lwork as usize];
    let mut rwork = vec![0.0f64; lrwork as usize];
    let mut iwork = vec![0i32; liwork as usize];
    unsafe {
        zheevd_(&jobz, &uplo, &ni, a.data.as_mut_ptr(), &ni, w.as_mut_ptr(),
                work.as_mut_ptr(), &lwork, rwork.as_mut_ptr(), &lrwork,
                iwork.as_mut_ptr(), &liwork, &mut info);
    }
    if info != 0 {
        return Err(CoreError::Lapack { routine: "zheevd", info });
    }
    Ok((w, a))
}

/// Eigenvalues of a general complex matrix.
pub fn eig_values(m: &CMatrix) -> Result<Vec<Complex64>> {
    let n = m.n_rows;
    assert_eq!(n, m.n_cols);
    let mut a = m.clone();
    let mut w = vec![Complex64::ZERO; n];
    let jobn = b'N' as c_char;
    let ni = n as i32;
    let one = 1i32;
    let mut info = 0i32;
    let mut rwork = vec![0.0f64; 2 * n];
    let mut wkopt = Complex64::ZERO;
    let m1 = -1i32;
    unsafe {
        zgeev_(&jobn, &jobn, &ni, a.data.as_mut_ptr(), &ni, w.as_mut_ptr(),
               std::ptr::null_mut(), &one, std::ptr::null_mut(), &one,
               &mut wkopt, &m1, rwork.as_mut_ptr(), &mut info);
    }
    if info != 0 {
        return Err(CoreError::Lapack { routine: "zgeev(query)", info });
    }
    let lwork = wkopt.re as i32;
    let mut work = vec![Complex64::ZERO; lwork as usize];
    unsafe {
        zgeev_(&jobn, &jobn, &ni, a.data.as_mut_ptr(), &ni, w.as_mut_ptr(),
               std::ptr::null_mut(), &one, std::ptr::null_mut(), &one,
               work.as_mut_ptr(), &lwork, rwork.as_mut_ptr(), &mut info);
    }
    if info != 0 {
        return Err(CoreError::Lapack { routine: "zgeev", info });
    }
    Ok(w)
}

/// C = A·op(B) with op ∈ {N, C}.
pub fn gemm(a: &CMatrix, b: &CMatrix, conj_b: bool) -> CMatrix {
    let m = a.n_rows;
    let k = a.n_cols;
    let n = if conj_b { b.n_rows } else { b.n_cols };
    if conj_b {
        assert_eq!(b.n_cols, k);
    } else {
        assert_eq!(b.n_rows, k);
    }
    let mut c = CMatrix::zeros(m, n);
    let (ta, tb) = (b'N' as c_char, if conj_b { b'C' } else { b'N' } as c_char);
    let (mi, ni, ki) = (m as i32, n as i32, k as i32);
    let ldb = b.n_rows as i32;
    let (alpha, beta) = (Complex64::ONE, Complex64::ZERO);
    unsafe {
        zgemm_(&ta, &tb, &mi, &ni, &ki, &alpha, a.data.as_ptr(), &mi, b.data.as_ptr(),
               &ldb, &beta, c.data.as_mut_ptr(), &mi);
    }
    c
}

/// log det of a Hermitian positive-definite matrix via Cholesky.
/// The argument is consumed as scratch.
pub fn logdet_hermitian_pd(mut m: CMatrix) -> Result<f64> {
    let n = m.n_rows;
    let uplo = b'L' as c_char;
    let ni = n as i32;
    let mut info = 0i32;
    unsafe {
        zpotrf_(&uplo, &ni, m.data.as_mut_ptr(), &ni, &mut info);
    }
    if info != 0 {
        return Err(CoreError::Lapack { routine: "zpotrf", info });
    }
    let mut acc = 0.0f64;
    for i in 0..n {
        acc += m.at(i, i).re.ln();
    }
    Ok(2.0 * acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigh_small() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = Complex64::new(2.0, 0.0);
        m[(1, 1)] = Complex64::new(2.0, 0.0);
        m[(0, 1)] = Complex64::new(0.0, 1.0);
        m[(1, 0)] = Complex64::new(0.0, -1.0);
        let (w, v) = eigh(&m).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-12 && (w[1] - 3.0).abs() < 1e-12);
        // columns normalized
        let n0: f64 = (0..2).map(|i| v.at(i, 0).norm_sqr()).sum();
        assert!((n0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn logdet_matches_product() {
        let mut m = CMatrix::identity(3);
        m[(0, 0)] = Complex64::new(2.0, 0.0);
        m[(1, 1)] = Complex64::new(3.0, 0.0);
        m[(2, 2)] = Complex64::new(4.0, 0.0);
        m[(0, 1)] = Complex64::new(0.5, 0.25);
        m[(1, 0)] = Complex64::new(0.5, -0.25);
        let ld = logdet_hermitian_pd(m.clone()).unwrap();
        // det by 3x3 expansion through zgeev eigenvalues
        let ev = eig_values(&m).unwrap();
        let want: f64 = ev.iter().map(|z| z.re.ln()).sum();
        assert!((ld - want).abs() < 1e-10);
    }

    #[test]
    fn gemm_conj() {
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 0)] = Complex64::new(1.0, 1.0);
        a[(1, 0)] = Complex64::new(0.0, 2.0);
        a[(0, 1)] = Complex64::new(3.0, 0.0);
        a[(1, 1)] = Complex64::new(0.0, -1.0);
        let c = gemm(&a, &a, true); // A A^H, Hermitian PSD
        assert!(c.hermiticity_defect() < 1e-14);
        assert!((c.at(0, 0).re - (2.0 + 9.0)).abs() < 1e-14);
    }
}
