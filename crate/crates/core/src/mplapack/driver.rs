//! Owned-matrix convenience layer over the LAPACK-style routines.

use super::{rgees, rgees_lwork, rgesvd, rgesvd_lwork, rgetrf, rgetri, rgetrs, rpotrf, rsyev, rsyev_lwork};
use crate::mpblas::{BlasError, IndexInt, Matrix};
use crate::real::Real;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum LapackError {
    #[error(transparent)]
    Argument(#[from] BlasError),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("{routine}: U({info},{info}) is exactly zero; the matrix is singular")]
    Singular { routine: &'static str, info: IndexInt },
    #[error("Rpotrf: the leading minor of order {info} is not positive definite")]
    NotPositiveDefinite { info: IndexInt },
    #[error("{routine} failed to converge (info = {info})")]
    NoConvergence { routine: &'static str, info: IndexInt },
}

fn square<T: Copy + Default>(a: &Matrix<T>) -> Result<usize, LapackError> {
    if a.is_square() {
        Ok(a.rows())
    } else {
        Err(LapackError::NotSquare { rows: a.rows(), cols: a.cols() })
    }
}

fn ld(rows: usize) -> IndexInt {
    rows.max(1) as IndexInt
}

/// `P * L * U` factors from [`lu`].
#[derive(Clone, Debug, PartialEq)]
pub struct LuFactors<T> {
    /// Unit-lower `L` below the diagonal, `U` on and above it.
    pub lu: Matrix<T>,
    /// 1-based pivot rows.
    pub ipiv: Vec<IndexInt>,
    /// 0, or the first `k` with `U(k, k) == 0`.
    pub info: IndexInt,
}

pub fn lu<T: Real>(a: &Matrix<T>) -> Result<LuFactors<T>, LapackError> {
    let (m, n) = (a.rows(), a.cols());
    let mut lu = a.compact();
    let mut ipiv = vec![0; m.min(n)];
    let info = rgetrf(m as IndexInt, n as IndexInt, lu.as_mut_slice(), ld(m), &mut ipiv)?;
    Ok(LuFactors { lu, ipiv, info })
}

impl<T: Real> LuFactors<T> {
    /// Solves `A X = B`.
    pub fn solve(&self, b: &Matrix<T>) -> Result<Matrix<T>, LapackError> {
        let n = square(&self.lu)?;
        if self.info != 0 {
            return Err(LapackError::Singular { routine: "Rgetrs", info: self.info });
        }
        let mut x = b.compact();
        rgetrs('N', n as IndexInt, b.cols() as IndexInt, self.lu.as_slice(), ld(n), &self.ipiv, x.as_mut_slice(), ld(b.rows()))?;
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix<T>, LapackError> {
        let n = square(&self.lu)?;
        let mut inv = self.lu.clone();
        let mut q = [T::zero()];
        rgetri(n as IndexInt, inv.as_mut_slice(), ld(n), &self.ipiv, &mut q, -1)?;
        let lwork = q[0].to_f64() as IndexInt;
        let mut work = vec![T::zero(); lwork as usize];
        let info = rgetri(n as IndexInt, inv.as_mut_slice(), ld(n), &self.ipiv, &mut work, lwork)?;
        if info != 0 {
            return Err(LapackError::Singular { routine: "Rgetri", info });
        }
        Ok(inv)
    }
}

/// `A^-1` through LU with partial pivoting.
pub fn inverse<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>, LapackError> {
    square(a)?;
    let f = lu(a)?;
    if f.info != 0 {
        return Err(LapackError::Singular { routine: "Rgetrf", info: f.info });
    }
    f.inverse()
}

/// Cholesky factor (`'L'`: `A = L L^T`, `'U'`: `A = U^T U`) with the other
/// triangle zeroed.
pub fn cholesky<T: Real>(a: &Matrix<T>, uplo: char) -> Result<Matrix<T>, LapackError> {
    let n = square(a)?;
    let mut f = a.compact();
    let info = rpotrf(uplo, n as IndexInt, f.as_mut_slice(), ld(n))?;
    if info != 0 {
        return Err(LapackError::NotPositiveDefinite { info });
    }
    let lower = uplo.eq_ignore_ascii_case(&'L');
    for j in 0..n {
        for i in 0..n {
            if (lower && i < j) || (!lower && i > j) {
                f[(i, j)] = T::zero();
            }
        }
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenResult<T> {
    /// Ascending eigenvalues.
    pub w: Vec<T>,
    /// Orthonormal eigenvectors, column `k` paired with `w[k]`.
    pub v: Option<Matrix<T>>,
}

/// Symmetric eigendecomposition reading the `uplo` triangle of `a`.
pub fn syev<T: Real>(a: &Matrix<T>, uplo: char, want_vectors: bool) -> Result<EigenResult<T>, LapackError> {
    let n = square(a)?;
    let mut z = a.compact();
    let mut w = vec![T::zero(); n];
    let lwork = rsyev_lwork(n as IndexInt);
    let mut work = vec![T::zero(); lwork as usize];
    let jobz = if want_vectors { 'V' } else { 'N' };
    let info = rsyev(jobz, uplo, n as IndexInt, z.as_mut_slice(), ld(n), &mut w, &mut work, lwork)?;
    if info != 0 {
        return Err(LapackError::NoConvergence { routine: "Rsyev", info });
    }
    Ok(EigenResult { w, v: want_vectors.then_some(z) })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchurResult<T> {
    /// Quasi-upper-triangular Schur form.
    pub t: Matrix<T>,
    /// Orthogonal Schur vectors, `A = Z T Z^T`.
    pub z: Option<Matrix<T>>,
    pub wr: Vec<T>,
    pub wi: Vec<T>,
}

pub fn gees<T: Real>(a: &Matrix<T>, want_vectors: bool) -> Result<SchurResult<T>, LapackError> {
    let n = square(a)?;
    let mut t = a.compact();
    let (mut wr, mut wi) = (vec![T::zero(); n], vec![T::zero(); n]);
    let mut z = Matrix::zeros(n, n);
    let lwork = rgees_lwork(n as IndexInt);
    let mut work = vec![T::zero(); lwork as usize];
    let jobvs = if want_vectors { 'V' } else { 'N' };
    let info = rgees(
        jobvs,
        n as IndexInt,
        t.as_mut_slice(),
        ld(n),
        &mut wr,
        &mut wi,
        z.as_mut_slice(),
        ld(n),
        &mut work,
        lwork,
    )?;
    if info != 0 {
        return Err(LapackError::NoConvergence { routine: "Rgees", info });
    }
    Ok(SchurResult { t, z: want_vectors.then_some(z), wr, wi })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SvdResult<T> {
    /// Descending, non-negative singular values.
    pub s: Vec<T>,
    /// `m x m` left singular vectors.
    pub u: Option<Matrix<T>>,
    /// `n x n` transposed right singular vectors.
    pub vt: Option<Matrix<T>>,
}

pub fn gesvd<T: Real>(a: &Matrix<T>, want_vectors: bool) -> Result<SvdResult<T>, LapackError> {
    let (m, n) = (a.rows(), a.cols());
    let mut work_a = a.compact();
    let mut s = vec![T::zero(); m.min(n)];
    let mut u = Matrix::zeros(m, m);
    let mut vt = Matrix::zeros(n, n);
    let lwork = rgesvd_lwork(m as IndexInt, n as IndexInt);
    let mut work = vec![T::zero(); lwork as usize];
    let job = if want_vectors { 'A' } else { 'N' };
    let info = rgesvd(
        job,
        job,
        m as IndexInt,
        n as IndexInt,
        work_a.as_mut_slice(),
        ld(m),
        &mut s,
        u.as_mut_slice(),
        ld(m),
        vt.as_mut_slice(),
        ld(n),
        &mut work,
        lwork,
    )?;
    if info != 0 {
        return Err(LapackError::NoConvergence { routine: "Rgesvd", info });
    }
    Ok(SvdResult { s, u: want_vectors.then_some(u), vt: want_vectors.then_some(vt) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_solve() {
        let a = Matrix::<f64>::from_rows(&[[4.0, 7.0], [2.0, 6.0]]);
        let inv = inverse(&a).unwrap();
        assert!((inv[(0, 0)] - 0.6).abs() < 1e-15);
        let x = lu(&a).unwrap().solve(&Matrix::from_rows(&[[11.0], [8.0]])).unwrap();
        assert!((x[(0, 0)] - 1.0).abs() < 1e-15 && (x[(1, 0)] - 1.0).abs() < 1e-15);
        let sing = Matrix::<f64>::from_rows(&[[1.0, 2.0], [2.0, 4.0]]);
        assert!(matches!(inverse(&sing), Err(LapackError::Singular { .. })));
        assert!(matches!(inverse(&Matrix::<f64>::zeros(2, 3)), Err(LapackError::NotSquare { .. })));
    }

    #[test]
    fn cholesky_zeroes_other_triangle() {
        let a = Matrix::<f64>::from_rows(&[[4.0, 2.0], [2.0, 3.0]]);
        let l = cholesky(&a, 'L').unwrap();
        assert_eq!(l[(0, 1)], 0.0);
        assert_eq!(l[(1, 0)], 1.0);
        assert!(matches!(
            cholesky(&Matrix::<f64>::from_rows(&[[1.0, 2.0], [2.0, 1.0]]), 'L'),
            Err(LapackError::NotPositiveDefinite { info: 2 })
        ));
    }
}
