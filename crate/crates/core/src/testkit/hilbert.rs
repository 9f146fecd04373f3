use crate::mplapack::{inverse, LapackError};
use crate::mpblas::Matrix;
use crate::real::Real;

use super::gen::{gen_matrix, MatrixGenSpec, MatrixKind};
use super::residual::matmul;

/// One row of the Hilbert inversion study.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertRow<T> {
    pub n: usize,
    /// `||inv(H) H - I||_inf`, or the failure when `H` is singular at this
    /// precision.
    pub infnorm_l: Result<T, LapackError>,
}

/// `||A^-1 A - I||_inf`.
pub fn infnorm_l<T: Real>(a: &Matrix<T>, ainv: &Matrix<T>) -> T {
    let mut r = matmul(ainv, 'N', a, 'N');
    for i in 0..r.rows() {
        r[(i, i)] -= T::one();
    }
    r.norm_inf()
}

/// Inverts the Hilbert matrices of order `1..=n_max` through
/// `Rgetrf` + `Rgetri` and reports the left residual of each.
pub fn hilbert_infnorm_study<T: Real>(n_max: usize) -> Vec<HilbertRow<T>> {
    (1..=n_max)
        .map(|n| {
            let h: Matrix<T> = gen_matrix(&MatrixGenSpec::square(MatrixKind::Hilbert, n, 0)).expect("square");
            HilbertRow { n, infnorm_l: inverse(&h).map(|hinv| infnorm_l(&h, &hinv)) }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DdReal;

    #[test]
    fn order_three_inverse_is_integral_at_dd() {
        let h: Matrix<DdReal> = gen_matrix(&MatrixGenSpec::square(MatrixKind::Hilbert, 3, 0)).unwrap();
        let inv = inverse(&h).unwrap();
        let exact = [[9.0, -36.0, 30.0], [-36.0, 192.0, -180.0], [30.0, -180.0, 180.0]];
        let bound = DdReal::from(10.0) * DdReal::eps() * inv.norm_inf();
        for i in 0..3 {
            for j in 0..3 {
                assert!((inv[(i, j)] - DdReal::from(exact[i][j])).abs() <= bound);
            }
        }
    }

    #[test]
    fn study_rows() {
        let rows = hilbert_infnorm_study::<f64>(4);
        assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), [1, 2, 3, 4]);
        assert_eq!(rows[0].infnorm_l, Ok(0.0));
    }
}
