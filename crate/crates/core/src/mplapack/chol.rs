use super::elementary::at;
use crate::mpblas::{lsame, BlasError, IndexInt};
use crate::real::Real;

/// Cholesky factorization `A = U^T * U` (`'U'`) or `A = L * L^T` (`'L'`).
///
/// Only the `uplo` triangle is referenced and overwritten. Returns info
/// `k > 0` if the leading minor of order `k` is not positive definite.
pub fn rpotrf<T: Real>(uplo: char, n: IndexInt, a: &mut [T], lda: IndexInt) -> Result<IndexInt, BlasError> {
    let upper = lsame(uplo, 'U');
    let info = if !upper && !lsame(uplo, 'L') {
        1
    } else if n < 0 {
        2
    } else if lda < n.max(1) {
        4
    } else {
        0
    };
    if info != 0 {
        return Err(BlasError::new("Rpotrf", info));
    }
    let (n, lda) = (n as usize, lda as usize);
    for j in 1..=n {
        // (i, k) addresses the stored triangle: U(k, i) or L(i, k).
        let idx = |r: usize, c: usize| if upper { at(c, r, lda) } else { at(r, c, lda) };
        let mut ajj = a[at(j, j, lda)];
        for k in 1..j {
            let v = a[idx(j, k)];
            ajj -= v * v;
        }
        if ajj <= T::zero() || ajj.is_nan() {
            a[at(j, j, lda)] = ajj;
            return Ok(j as IndexInt);
        }
        let ajj = ajj.sqrt();
        a[at(j, j, lda)] = ajj;
        for i in j + 1..=n {
            let mut s = a[idx(i, j)];
            for k in 1..j {
                s -= a[idx(i, k)] * a[idx(j, k)];
            }
            a[idx(i, j)] = s / ajj;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_computed_factor() {
        // [[4, 2], [2, 3]] = L L^T with L = [[2, 0], [1, sqrt(2)]]
        let mut a = [4.0, 2.0, f64::NAN, 3.0];
        assert_eq!(rpotrf('L', 2, &mut a, 2).unwrap(), 0);
        assert_eq!((a[0], a[1], a[3]), (2.0, 1.0, 2f64.sqrt()));
        assert!(a[2].is_nan());
        let mut a = [4.0, f64::NAN, 2.0, 3.0];
        assert_eq!(rpotrf('U', 2, &mut a, 2).unwrap(), 0);
        assert_eq!((a[0], a[2], a[3]), (2.0, 1.0, 2f64.sqrt()));
    }

    #[test]
    fn indefinite_reports_minor() {
        let mut a = [1.0, 2.0, 2.0, 1.0];
        assert_eq!(rpotrf('L', 2, &mut a, 2).unwrap(), 2);
        assert_eq!(rpotrf('X', 2, &mut a, 2).unwrap_err().arg, 1);
        assert_eq!(rpotrf('L', 2, &mut a, 1).unwrap_err().arg, 4);
    }
}
