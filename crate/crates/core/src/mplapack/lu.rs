use super::elementary::at;
use crate::mpblas::{iramax, lsame, rgemv, rtrsm, BlasError, IndexInt};
use crate::real::Real;

/// LU factorization with partial pivoting, `A = P * L * U`.
///
/// On return `a` holds `L` (unit diagonal, not stored) and `U`; `ipiv[k]`
/// is the 1-based row swapped with row `k + 1`. The returned info is `k > 0`
/// when `U(k, k)` is exactly zero (the factorization is still completed).
pub fn rgetrf<T: Real>(
    m: IndexInt,
    n: IndexInt,
    a: &mut [T],
    lda: IndexInt,
    ipiv: &mut [IndexInt],
) -> Result<IndexInt, BlasError> {
    let info = if m < 0 {
        1
    } else if n < 0 {
        2
    } else if lda < m.max(1) {
        4
    } else {
        0
    };
    if info != 0 {
        return Err(BlasError::new("Rgetrf", info));
    }
    let (m, n, lda) = (m as usize, n as usize, lda as usize);
    let mut info = 0;
    for j in 1..=m.min(n) {
        let col = at(j, j, lda);
        let jp = j - 1 + iramax((m - j + 1) as IndexInt, &a[col..], 1) as usize;
        ipiv[j - 1] = jp as IndexInt;
        if !a[at(jp, j, lda)].is_zero() {
            if jp != j {
                for c in 1..=n {
                    a.swap(at(j, c, lda), at(jp, c, lda));
                }
            }
            let pivot = a[at(j, j, lda)];
            for i in j + 1..=m {
                a[at(i, j, lda)] /= pivot;
            }
        } else if info == 0 {
            info = j as IndexInt;
        }
        // Rank-one update of the trailing block.
        for c in j + 1..=n {
            let ujc = a[at(j, c, lda)];
            if !ujc.is_zero() {
                for i in j + 1..=m {
                    let lij = a[at(i, j, lda)];
                    a[at(i, c, lda)] -= lij * ujc;
                }
            }
        }
    }
    Ok(info)
}

/// Applies the row interchanges `ipiv[k1-1..k2]` (1-based) to the columns of `a`,
/// forward when `forward`, else in reverse.
fn laswp<T: Real>(ncols: usize, a: &mut [T], lda: usize, k1: usize, k2: usize, ipiv: &[IndexInt], forward: bool) {
    let order: Vec<usize> = if forward { (k1..=k2).collect() } else { (k1..=k2).rev().collect() };
    for i in order {
        let ip = ipiv[i - 1] as usize;
        if ip != i {
            for c in 1..=ncols {
                a.swap(at(i, c, lda), at(ip, c, lda));
            }
        }
    }
}

/// Solves `A * X = B` (`'N'`) or `A^T * X = B` (`'T'`/`'C'`) using the
/// factorization from [`rgetrf`].
#[allow(clippy::too_many_arguments)]
pub fn rgetrs<T: Real>(
    trans: char,
    n: IndexInt,
    nrhs: IndexInt,
    a: &[T],
    lda: IndexInt,
    ipiv: &[IndexInt],
    b: &mut [T],
    ldb: IndexInt,
) -> Result<IndexInt, BlasError> {
    let notran = lsame(trans, 'N');
    let info = if !notran && !lsame(trans, 'T') && !lsame(trans, 'C') {
        1
    } else if n < 0 {
        2
    } else if nrhs < 0 {
        3
    } else if lda < n.max(1) {
        5
    } else if ldb < n.max(1) {
        8
    } else {
        0
    };
    if info != 0 {
        return Err(BlasError::new("Rgetrs", info));
    }
    if n == 0 || nrhs == 0 {
        return Ok(0);
    }
    let one = T::one();
    if notran {
        laswp(nrhs as usize, b, ldb as usize, 1, n as usize, ipiv, true);
        rtrsm('L', 'L', 'N', 'U', n, nrhs, one, a, lda, b, ldb)?;
        rtrsm('L', 'U', 'N', 'N', n, nrhs, one, a, lda, b, ldb)?;
    } else {
        rtrsm('L', 'U', 'T', 'N', n, nrhs, one, a, lda, b, ldb)?;
        rtrsm('L', 'L', 'T', 'U', n, nrhs, one, a, lda, b, ldb)?;
        laswp(nrhs as usize, b, ldb as usize, 1, n as usize, ipiv, false);
    }
    Ok(0)
}

/// Optimal `lwork` for [`rgetri`].
pub fn rgetri_lwork(n: IndexInt) -> IndexInt {
    n.max(1)
}

/// Inverse from the factorization of [`rgetrf`]. `lwork == -1` is a
/// workspace query that only writes the optimal size into `work[0]`.
#[allow(clippy::too_many_arguments)]
pub fn rgetri<T: Real>(
    n: IndexInt,
    a: &mut [T],
    lda: IndexInt,
    ipiv: &[IndexInt],
    work: &mut [T],
    lwork: IndexInt,
) -> Result<IndexInt, BlasError> {
    let query = lwork == -1;
    let info = if n < 0 {
        1
    } else if lda < n.max(1) {
        3
    } else if lwork < n.max(1) && !query {
        6
    } else {
        0
    };
    if info != 0 {
        return Err(BlasError::new("Rgetri", info));
    }
    if query {
        work[0] = T::from_i64(rgetri_lwork(n));
        return Ok(0);
    }
    if n == 0 {
        return Ok(0);
    }
    let (nu, ldu) = (n as usize, lda as usize);
    for i in 1..=nu {
        if a[at(i, i, ldu)].is_zero() {
            return Ok(i as IndexInt);
        }
    }
    trti2_upper(nu, a, ldu);

    // Solve inv(A) * L = inv(U) for inv(A), one column at a time from the right.
    for j in (1..=nu).rev() {
        for i in j + 1..=nu {
            work[i - 1] = a[at(i, j, ldu)];
            a[at(i, j, ldu)] = T::zero();
        }
        if j < nu {
            let (left, right) = a.split_at_mut(j * ldu);
            rgemv(
                'N',
                n,
                (nu - j) as IndexInt,
                -T::one(),
                right,
                lda,
                &work[j..nu],
                1,
                T::one(),
                &mut left[(j - 1) * ldu..],
                1,
            )?;
        }
    }
    for j in (1..nu).rev() {
        let jp = ipiv[j - 1] as usize;
        if jp != j {
            for i in 1..=nu {
                a.swap(at(i, j, ldu), at(i, jp, ldu));
            }
        }
    }
    Ok(0)
}

/// In-place inverse of a non-unit upper-triangular matrix.
fn trti2_upper<T: Real>(n: usize, a: &mut [T], lda: usize) {
    for j in 1..=n {
        let ajj_inv = T::one() / a[at(j, j, lda)];
        a[at(j, j, lda)] = ajj_inv;
        let ajj = -ajj_inv;
        // x := T(1:j-1, 1:j-1) * x with T already inverted.
        for k in 1..j {
            let xk = a[at(k, j, lda)];
            if !xk.is_zero() {
                for i in 1..k {
                    let tik = a[at(i, k, lda)];
                    a[at(i, j, lda)] += xk * tik;
                }
                a[at(k, j, lda)] = xk * a[at(k, k, lda)];
            }
        }
        for i in 1..j {
            a[at(i, j, lda)] *= ajj;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_factors_trivially() {
        let mut a = [1.0, 0.0, 0.0, 1.0];
        let mut ipiv = [0; 2];
        assert_eq!(rgetrf(2, 2, &mut a, 2, &mut ipiv).unwrap(), 0);
        assert_eq!(a, [1.0, 0.0, 0.0, 1.0]);
        assert_eq!(ipiv, [1, 2]);
    }

    #[test]
    fn pivoting_and_solve() {
        // A = [[0, 1], [2, 3]], b = (1, 5) -> x = (1, 1)
        let a0 = [0.0, 2.0, 1.0, 3.0];
        let mut a = a0;
        let mut ipiv = [0; 2];
        rgetrf(2, 2, &mut a, 2, &mut ipiv).unwrap();
        assert_eq!(ipiv, [2, 2]);
        let mut b = [1.0, 5.0];
        rgetrs('N', 2, 1, &a, 2, &ipiv, &mut b, 2).unwrap();
        assert_eq!(b, [1.0, 1.0]);
        // A^T = [[0, 2], [1, 3]], b = (2, 4) -> x = (1, 1)
        let mut b = [2.0, 4.0];
        rgetrs('T', 2, 1, &a, 2, &ipiv, &mut b, 2).unwrap();
        assert_eq!(b, [1.0, 1.0]);
    }

    #[test]
    fn zero_pivot_reported() {
        let mut a = [1.0, 2.0, 2.0, 4.0];
        let mut ipiv = [0; 2];
        assert_eq!(rgetrf(2, 2, &mut a, 2, &mut ipiv).unwrap(), 2);
        let mut work = [0.0; 2];
        assert_eq!(rgetri(2, &mut a, 2, &ipiv, &mut work, 2).unwrap(), 2);
    }

    #[test]
    fn inverse_of_small_matrix() {
        // [[4, 7], [2, 6]]^-1 = [[0.6, -0.7], [-0.2, 0.4]]
        let mut a = [4.0, 2.0, 7.0, 6.0];
        let mut ipiv = [0; 2];
        rgetrf(2, 2, &mut a, 2, &mut ipiv).unwrap();
        let mut work = [0.0; 2];
        rgetri(2, &mut a, 2, &ipiv, &mut work, 2).unwrap();
        let expect = [0.6, -0.2, -0.7, 0.4];
        for (x, e) in a.iter().zip(expect) {
            assert!((x - e).abs() < 1e-15, "{a:?}");
        }
    }

    #[test]
    fn argument_checks() {
        let mut a = [0.0; 4];
        let mut ipiv = [0; 2];
        assert_eq!(rgetrf(2, 2, &mut a, 1, &mut ipiv).unwrap_err().arg, 4);
        let mut b = [0.0; 2];
        assert_eq!(rgetrs('X', 2, 1, &a, 2, &ipiv, &mut b, 2).unwrap_err().arg, 1);
        assert_eq!(rgetrs('N', 2, 1, &a, 2, &ipiv, &mut b, 1).unwrap_err().arg, 8);
        let mut w = [0.0; 1];
        assert_eq!(rgetri(2, &mut a, 2, &ipiv, &mut w, 1).unwrap_err().arg, 6);
        assert_eq!(rgetri(2, &mut a, 2, &ipiv, &mut w, -1).unwrap(), 0);
        assert_eq!(w[0], 2.0);
    }
}
