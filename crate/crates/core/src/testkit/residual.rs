//! LAPACK-style residual ratios `||R|| / (dim * ||A|| * eps)`.
//!
//! Norms are 1-norms unless noted and `eps` is the unit roundoff of the
//! precision the factors were computed in, so a ratio below 30 means the
//! same thing at binary64 and at double-double.

use crate::mpblas::{rgemm, IndexInt, Matrix};
use crate::real::Real;

use super::report::ResidualReport;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("dimension mismatch: {0}")]
pub struct ResidualError(pub String);

fn mismatch(what: impl Into<String>) -> ResidualError {
    ResidualError(what.into())
}

/// `op(A) op(B)` through `Rgemm`.
pub fn matmul<T: Real>(a: &Matrix<T>, ta: char, b: &Matrix<T>, tb: char) -> Matrix<T> {
    let (m, k) = if ta == 'N' { (a.rows(), a.cols()) } else { (a.cols(), a.rows()) };
    let n = if tb == 'N' { b.cols() } else { b.rows() };
    let mut c = Matrix::zeros(m, n);
    let (a, b) = (a.compact(), b.compact());
    let ld = |r: usize| r.max(1) as IndexInt;
    rgemm(
        ta,
        tb,
        m as IndexInt,
        n as IndexInt,
        k as IndexInt,
        T::one(),
        a.as_slice(),
        ld(a.rows()),
        b.as_slice(),
        ld(b.rows()),
        T::zero(),
        c.as_mut_slice(),
        ld(m),
    )
    .expect("shapes are consistent");
    c
}

fn sub<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)] - b[(i, j)])
}

fn minus_identity<T: Real>(mut a: Matrix<T>) -> Matrix<T> {
    for i in 0..a.rows().min(a.cols()) {
        a[(i, i)] -= T::one();
    }
    a
}

/// `resid / (dim * anorm * eps)`, with a zero `anorm` mapping a nonzero
/// residual to `1/eps` as the LAPACK testers do.
pub fn lapack_ratio<T: Real>(resid: T, anorm: T, dim: usize) -> f64 {
    let eps = T::eps();
    if anorm <= T::zero() {
        return if resid.is_zero() { 0.0 } else { (T::one() / eps).to_f64() };
    }
    (resid / anorm / (T::from_i64(dim.max(1) as i64) * eps)).to_f64()
}

/// `||Q^T Q - I|| / (k * eps)` over the columns of `q`.
pub fn orthogonality<T: Real>(q: &Matrix<T>) -> f64 {
    let k = q.cols();
    lapack_ratio(minus_identity(matmul(q, 'T', q, 'N')).norm_one(), T::one(), k)
}

/// `||L U - P A|| / (n ||A|| eps)` for the output of `Rgetrf`.
pub fn residual_lu<T: Real>(a: &Matrix<T>, lu: &Matrix<T>, ipiv: &[IndexInt]) -> Result<ResidualReport, ResidualError> {
    let (m, n) = (a.rows(), a.cols());
    let k = m.min(n);
    if lu.rows() != m || lu.cols() != n || ipiv.len() != k {
        return Err(mismatch("LU factors do not match A"));
    }
    let l = Matrix::from_fn(m, k, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => lu[(i, j)],
        std::cmp::Ordering::Equal => T::one(),
        std::cmp::Ordering::Less => T::zero(),
    });
    let u = Matrix::from_fn(k, n, |i, j| if i <= j { lu[(i, j)] } else { T::zero() });
    let mut pa = a.compact();
    for (i, &p) in ipiv.iter().enumerate() {
        let p = (p - 1) as usize;
        if p >= m {
            return Err(mismatch(format!("pivot {} out of range", p + 1)));
        }
        if p != i {
            for j in 0..n {
                let t = pa[(i, j)];
                pa[(i, j)] = pa[(p, j)];
                pa[(p, j)] = t;
            }
        }
    }
    let r = sub(&matmul(&l, 'N', &u, 'N'), &pa).norm_one();
    Ok(ResidualReport::new("Rgetrf ||LU-PA||", T::PRECISION, (m, n), lapack_ratio(r, a.norm_one(), n)))
}

/// `max_j ||b_j - A x_j||_inf / (n ||A||_inf ||x_j||_inf eps)`.
pub fn residual_solve<T: Real>(a: &Matrix<T>, x: &Matrix<T>, b: &Matrix<T>) -> Result<ResidualReport, ResidualError> {
    let n = a.rows();
    if !a.is_square() || x.rows() != n || b.rows() != n || x.cols() != b.cols() {
        return Err(mismatch("A X = B shapes"));
    }
    let r = sub(b, &matmul(a, 'N', x, 'N'));
    let anorm = a.norm_inf();
    let mut worst = 0.0f64;
    for j in 0..x.cols() {
        let rn = r.col(j).iter().fold(T::zero(), |m, v| m.max(v.abs()));
        let xn = x.col(j).iter().fold(T::zero(), |m, v| m.max(v.abs()));
        worst = worst.max(lapack_ratio(rn, anorm * xn, n));
    }
    Ok(ResidualReport::new("Rgetrs ||B-AX||", T::PRECISION, (n, x.cols()), worst))
}

/// `||A^-1 A - I|| / (n ||A|| ||A^-1|| eps)`.
pub fn residual_inverse<T: Real>(a: &Matrix<T>, ainv: &Matrix<T>) -> Result<ResidualReport, ResidualError> {
    let n = a.rows();
    if !a.is_square() || ainv.rows() != n || ainv.cols() != n {
        return Err(mismatch("inverse shape"));
    }
    let r = minus_identity(matmul(ainv, 'N', a, 'N')).norm_one();
    let ratio = lapack_ratio(r, a.norm_one() * ainv.norm_one(), n);
    Ok(ResidualReport::new("Rgetri ||inv(A)A-I||", T::PRECISION, (n, n), ratio))
}

fn symmetric_from<T: Real>(a: &Matrix<T>, uplo: char) -> Matrix<T> {
    let lower = uplo.eq_ignore_ascii_case(&'L');
    Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        if (i >= j) == lower || i == j {
            a[(i, j)]
        } else {
            a[(j, i)]
        }
    })
}

/// `||L L^T - A|| / (n ||A|| eps)` (or `U^T U`), reading the `uplo`
/// triangles of both `a` and `factor`.
pub fn residual_chol<T: Real>(a: &Matrix<T>, factor: &Matrix<T>, uplo: char) -> Result<ResidualReport, ResidualError> {
    let n = a.rows();
    if !a.is_square() || factor.rows() != n || factor.cols() != n {
        return Err(mismatch("Cholesky factor shape"));
    }
    let lower = uplo.eq_ignore_ascii_case(&'L');
    let f = Matrix::from_fn(n, n, |i, j| if (lower && i >= j) || (!lower && i <= j) { factor[(i, j)] } else { T::zero() });
    let full = symmetric_from(a, uplo);
    let prod = if lower { matmul(&f, 'N', &f, 'T') } else { matmul(&f, 'T', &f, 'N') };
    let r = sub(&prod, &full).norm_one();
    Ok(ResidualReport::new("Rpotrf ||LL'-A||", T::PRECISION, (n, n), lapack_ratio(r, full.norm_one(), n)))
}

/// Eigen-residual `||A V - V diag(w)|| / (n ||A|| eps)` and orthogonality
/// `||V^T V - I|| / (n eps)` for a symmetric `a` given by its `uplo` triangle.
pub fn residual_eig<T: Real>(a: &Matrix<T>, uplo: char, w: &[T], v: &Matrix<T>) -> Result<Vec<ResidualReport>, ResidualError> {
    let n = a.rows();
    if !a.is_square() || w.len() != n || v.rows() != n || v.cols() != n {
        return Err(mismatch("eigen-decomposition shapes"));
    }
    let full = symmetric_from(a, uplo);
    let av = matmul(&full, 'N', v, 'N');
    let vw = Matrix::from_fn(n, n, |i, j| v[(i, j)] * w[j]);
    let r = sub(&av, &vw).norm_one();
    let sorted = w.windows(2).all(|p| p[0] <= p[1]);
    Ok(vec![
        ResidualReport::new("Rsyev ||AV-VW||", T::PRECISION, (n, n), lapack_ratio(r, full.norm_one(), n)),
        ResidualReport::new("Rsyev ||V'V-I||", T::PRECISION, (n, n), orthogonality(v)),
        ResidualReport::new("Rsyev w ascending", T::PRECISION, (n, n), if sorted { 0.0 } else { f64::INFINITY }),
    ])
}

/// Whether `t` is standardized quasi-upper-triangular: zero below the
/// subdiagonal, no two adjacent subdiagonal nonzeros, and each 2x2 block
/// with equal diagonal entries and off-diagonal entries of opposite sign.
pub fn is_quasi_triangular<T: Real>(t: &Matrix<T>) -> bool {
    let n = t.rows();
    for j in 0..n {
        for i in j + 2..n {
            if !t[(i, j)].is_zero() {
                return false;
            }
        }
    }
    let mut j = 0;
    while j + 1 < n {
        if t[(j + 1, j)].is_zero() {
            j += 1;
            continue;
        }
        let standard = t[(j, j)] == t[(j + 1, j + 1)] && (t[(j, j + 1)] * t[(j + 1, j)]) < T::zero();
        let isolated = j + 2 >= n || t[(j + 2, j + 1)].is_zero();
        if !standard || !isolated {
            return false;
        }
        j += 2;
    }
    true
}

/// `||A - Z T Z^T|| / (n ||A|| eps)`, `||Z^T Z - I|| / (n eps)` and the
/// structure of `T`.
pub fn residual_schur<T: Real>(a: &Matrix<T>, t: &Matrix<T>, z: &Matrix<T>) -> Result<Vec<ResidualReport>, ResidualError> {
    let n = a.rows();
    let sq = |m: &Matrix<T>| m.rows() == n && m.cols() == n;
    if !a.is_square() || !sq(t) || !sq(z) {
        return Err(mismatch("Schur factor shapes"));
    }
    let ztz = matmul(&matmul(z, 'N', t, 'N'), 'N', z, 'T');
    let r = sub(a, &ztz).norm_one();
    Ok(vec![
        ResidualReport::new("Rgees ||A-ZTZ'||", T::PRECISION, (n, n), lapack_ratio(r, a.norm_one(), n)),
        ResidualReport::new("Rgees ||Z'Z-I||", T::PRECISION, (n, n), orthogonality(z)),
        ResidualReport::new(
            "Rgees T quasi-triangular",
            T::PRECISION,
            (n, n),
            if is_quasi_triangular(t) { 0.0 } else { f64::INFINITY },
        ),
    ])
}

/// `||A - U S V^T|| / (max(m,n) ||A|| eps)`, both orthogonality ratios and
/// the ordering of `s`.
pub fn residual_svd<T: Real>(a: &Matrix<T>, s: &[T], u: &Matrix<T>, vt: &Matrix<T>) -> Result<Vec<ResidualReport>, ResidualError> {
    let (m, n) = (a.rows(), a.cols());
    if s.len() != m.min(n) || u.rows() != m || u.cols() != m || vt.rows() != n || vt.cols() != n {
        return Err(mismatch("SVD factor shapes"));
    }
    let sigma = Matrix::from_fn(m, n, |i, j| if i == j { s[i] } else { T::zero() });
    let usv = matmul(&matmul(u, 'N', &sigma, 'N'), 'N', vt, 'N');
    let r = sub(a, &usv).norm_one();
    let ordered = s.iter().all(|&x| x >= T::zero()) && s.windows(2).all(|p| p[0] >= p[1]);
    Ok(vec![
        ResidualReport::new("Rgesvd ||A-USV'||", T::PRECISION, (m, n), lapack_ratio(r, a.norm_one(), m.max(n))),
        ResidualReport::new("Rgesvd ||U'U-I||", T::PRECISION, (m, n), orthogonality(u)),
        ResidualReport::new("Rgesvd ||VV'-I||", T::PRECISION, (m, n), orthogonality(&vt.transpose())),
        ResidualReport::new("Rgesvd s ordered", T::PRECISION, (m, n), if ordered { 0.0 } else { f64::INFINITY }),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mplapack;
    use crate::DdReal;

    #[test]
    fn identity_factors_have_zero_ratio() {
        let i3 = Matrix::<f64>::identity(3);
        assert_eq!(residual_lu(&i3, &i3, &[1, 2, 3]).unwrap().ratio, 0.0);
        assert_eq!(residual_chol(&i3, &i3, 'L').unwrap().ratio, 0.0);
        assert_eq!(residual_inverse(&i3, &i3).unwrap().ratio, 0.0);
        for r in residual_svd(&i3, &[1.0; 3], &i3, &i3).unwrap() {
            assert_eq!(r.ratio, 0.0, "{r}");
        }
    }

    #[test]
    fn wrong_factors_fail() {
        let a = Matrix::<f64>::from_rows(&[[4.0, 2.0], [2.0, 3.0]]);
        let bad = Matrix::from_rows(&[[2.0, 0.0], [1.0, 1.0]]);
        assert!(!residual_chol(&a, &bad, 'L').unwrap().passed);
        assert!(residual_lu(&a, &a, &[1]).is_err());
    }

    #[test]
    fn symmetric_eigen_instance_at_dd() {
        let rows = [[5, 4, 1, 1], [4, 5, 1, 1], [1, 1, 4, 2], [1, 1, 2, 4]];
        let a = Matrix::from_fn(4, 4, |i, j| DdReal::from(rows[i][j] as f64));
        let e = mplapack::syev(&a, 'U', true).unwrap();
        for r in residual_eig(&a, 'U', &e.w, e.v.as_ref().unwrap()).unwrap() {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn quasi_triangular_structure() {
        let good = Matrix::<f64>::from_rows(&[[1.0, 2.0, 3.0], [-4.0, 1.0, 5.0], [0.0, 0.0, 7.0]]);
        assert!(is_quasi_triangular(&good));
        let unstandard = Matrix::<f64>::from_rows(&[[1.0, 2.0], [4.0, 1.0]]);
        assert!(!is_quasi_triangular(&unstandard));
        let chained = Matrix::<f64>::from_rows(&[[1.0, 2.0, 0.0], [-1.0, 1.0, 2.0], [0.0, -1.0, 1.0]]);
        assert!(!is_quasi_triangular(&chained));
    }
}
