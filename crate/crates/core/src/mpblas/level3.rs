use super::{lsame, BlasError, IndexInt};
use crate::real::Real;

#[derive(Clone, Copy)]
pub(crate) struct GemmShape {
    pub nota: bool,
    pub notb: bool,
    pub m: usize,
    pub k: usize,
}

/// Validates `Rgemm` arguments; `Ok(None)` means quick return.
#[allow(clippy::too_many_arguments)]
pub(crate) fn gemm_check<T: Real>(
    transa: char,
    transb: char,
    m: IndexInt,
    n: IndexInt,
    k: IndexInt,
    alpha: T,
    lda: IndexInt,
    ldb: IndexInt,
    beta: T,
    ldc: IndexInt,
) -> Result<Option<GemmShape>, BlasError> {
    let nota = lsame(transa, 'N');
    let notb = lsame(transb, 'N');
    let nrowa = if nota { m } else { k };
    let nrowb = if notb { k } else { n };
    let flag_ok = |c| lsame(c, 'N') || lsame(c, 'T') || lsame(c, 'C');
    let info = if !flag_ok(transa) {
        1
    } else if !flag_ok(transb) {
        2
    } else if m < 0 {
        3
    } else if n < 0 {
        4
    } else if k < 0 {
        5
    } else if lda < nrowa.max(1) {
        8
    } else if ldb < nrowb.max(1) {
        10
    } else if ldc < m.max(1) {
        13
    } else {
        0
    };
    if info != 0 {
        return Err(BlasError::new("Rgemm", info));
    }
    if m == 0 || n == 0 || ((alpha.is_zero() || k == 0) && beta == T::one()) {
        return Ok(None);
    }
    Ok(Some(GemmShape { nota, notb, m: m as usize, k: k as usize }))
}

/// Computes columns `j0..j0 + ncols` of `C`; `c` holds exactly those columns.
#[allow(clippy::too_many_arguments)]
pub(crate) fn gemm_panel<T: Real>(
    s: GemmShape,
    j0: usize,
    ncols: usize,
    alpha: T,
    a: &[T],
    lda: usize,
    b: &[T],
    ldb: usize,
    beta: T,
    c: &mut [T],
    ldc: usize,
) {
    let GemmShape { nota, notb, m, k } = s;
    let opb = |l: usize, j: usize| if notb { b[l + j * ldb] } else { b[j + l * ldb] };
    for jj in 0..ncols {
        let j = j0 + jj;
        let ccol = &mut c[jj * ldc..jj * ldc + m];
        if alpha.is_zero() {
            for v in ccol.iter_mut() {
                *v = if beta.is_zero() { T::zero() } else { beta * *v };
            }
            continue;
        }
        if nota {
            if beta.is_zero() {
                ccol.fill(T::zero());
            } else if beta != T::one() {
                for v in ccol.iter_mut() {
                    *v *= beta;
                }
            }
            for l in 0..k {
                let temp = alpha * opb(l, j);
                let acol = &a[l * lda..l * lda + m];
                for (ci, &ail) in ccol.iter_mut().zip(acol) {
                    *ci += temp * ail;
                }
            }
        } else {
            for (i, ci) in ccol.iter_mut().enumerate() {
                let acol = &a[i * lda..i * lda + k];
                let mut temp = T::zero();
                for (l, &ali) in acol.iter().enumerate() {
                    temp += ali * opb(l, j);
                }
                *ci = if beta.is_zero() { alpha * temp } else { alpha * temp + beta * *ci };
            }
        }
    }
}

/// `C <- alpha * op(A) * op(B) + beta * C`.
#[allow(clippy::too_many_arguments)]
pub fn rgemm<T: Real>(
    transa: char,
    transb: char,
    m: IndexInt,
    n: IndexInt,
    k: IndexInt,
    alpha: T,
    a: &[T],
    lda: IndexInt,
    b: &[T],
    ldb: IndexInt,
    beta: T,
    c: &mut [T],
    ldc: IndexInt,
) -> Result<(), BlasError> {
    let Some(shape) = gemm_check(transa, transb, m, n, k, alpha, lda, ldb, beta, ldc)? else {
        return Ok(());
    };
    let (n, ldc) = (n as usize, ldc as usize);
    let c = &mut c[..(n - 1) * ldc + shape.m];
    gemm_panel(shape, 0, n, alpha, a, lda as usize, b, ldb as usize, beta, c, ldc);
    Ok(())
}

/// Symmetric rank-k update of the `uplo` triangle of `C`:
/// `alpha * A * A^T + beta * C` (`'N'`) or `alpha * A^T * A + beta * C` (`'T'`/`'C'`).
#[allow(clippy::too_many_arguments)]
pub fn rsyrk<T: Real>(
    uplo: char,
    trans: char,
    n: IndexInt,
    k: IndexInt,
    alpha: T,
    a: &[T],
    lda: IndexInt,
    beta: T,
    c: &mut [T],
    ldc: IndexInt,
) -> Result<(), BlasError> {
    let notrans = lsame(trans, 'N');
    let nrowa = if notrans { n } else { k };
    let upper = lsame(uplo, 'U');
    let info = if !upper && !lsame(uplo, 'L') {
        1
    } else if !notrans && !lsame(trans, 'T') && !lsame(trans, 'C') {
        2
    } else if n < 0 {
        3
    } else if k < 0 {
        4
    } else if lda < nrowa.max(1) {
        7
    } else if ldc < n.max(1) {
        10
    } else {
        0
    };
    if info != 0 {
        return Err(BlasError::new("Rsyrk", info));
    }
    if n == 0 || ((alpha.is_zero() || k == 0) && beta == T::one()) {
        return Ok(());
    }
    let (n, k, lda, ldc) = (n as usize, k as usize, lda as usize, ldc as usize);
    let rows = |j: usize| if upper { 0..j + 1 } else { j..n };

    if alpha.is_zero() {
        for j in 0..n {
            for i in rows(j) {
                let v = &mut c[i + j * ldc];
                *v = if beta.is_zero() { T::zero() } else { beta * *v };
            }
        }
        return Ok(());
    }
    if notrans {
        for j in 0..n {
            for i in rows(j) {
                let v = &mut c[i + j * ldc];
                if beta.is_zero() {
                    *v = T::zero();
                } else if beta != T::one() {
                    *v *= beta;
                }
            }
            for l in 0..k {
                let ajl = a[j + l * lda];
                if !ajl.is_zero() {
                    let temp = alpha * ajl;
                    for i in rows(j) {
                        c[i + j * ldc] += temp * a[i + l * lda];
                    }
                }
            }
        }
    } else {
        for j in 0..n {
            for i in rows(j) {
                let mut temp = T::zero();
                for l in 0..k {
                    temp += a[l + i * lda] * a[l + j * lda];
                }
                let v = &mut c[i + j * ldc];
                *v = if beta.is_zero() { alpha * temp } else { alpha * temp + beta * *v };
            }
        }
    }
    Ok(())
}

/// Solves `op(A) * X = alpha * B` (`side = 'L'`) or `X * op(A) = alpha * B`
/// (`side = 'R'`) for triangular `A`, overwriting `B` with `X`.
#[allow(clippy::too_many_arguments)]
pub fn rtrsm<T: Real>(
    side: char,
    uplo: char,
    transa: char,
    diag: char,
    m: IndexInt,
    n: IndexInt,
    alpha: T,
    a: &[T],
    lda: IndexInt,
    b: &mut [T],
    ldb: IndexInt,
) -> Result<(), BlasError> {
    let lside = lsame(side, 'L');
    let nrowa = if lside { m } else { n };
    let nounit = lsame(diag, 'N');
    let upper = lsame(uplo, 'U');
    let info = if !lside && !lsame(side, 'R') {
        1
    } else if !upper && !lsame(uplo, 'L') {
        2
    } else if !lsame(transa, 'N') && !lsame(transa, 'T') && !lsame(transa, 'C') {
        3
    } else if !lsame(diag, 'U') && !nounit {
        4
    } else if m < 0 {
        5
    } else if n < 0 {
        6
    } else if lda < nrowa.max(1) {
        9
    } else if ldb < m.max(1) {
        11
    } else {
        0
    };
    if info != 0 {
        return Err(BlasError::new("Rtrsm", info));
    }
    if m == 0 || n == 0 {
        return Ok(());
    }
    let (m, n, lda, ldb) = (m as usize, n as usize, lda as usize, ldb as usize);
    let at = |i: usize, j: usize| a[i + j * lda];
    let one = T::one();

    if alpha.is_zero() {
        for j in 0..n {
            b[j * ldb..j * ldb + m].fill(T::zero());
        }
        return Ok(());
    }
    let notrans = lsame(transa, 'N');

    if lside {
        if notrans {
            // B := alpha * inv(A) * B
            for j in 0..n {
                let bj = j * ldb;
                if alpha != one {
                    for i in 0..m {
                        b[bj + i] *= alpha;
                    }
                }
                if upper {
                    for k in (0..m).rev() {
                        if !b[bj + k].is_zero() {
                            if nounit {
                                b[bj + k] /= at(k, k);
                            }
                            let bk = b[bj + k];
                            for i in 0..k {
                                b[bj + i] -= bk * at(i, k);
                            }
                        }
                    }
                } else {
                    for k in 0..m {
                        if !b[bj + k].is_zero() {
                            if nounit {
                                b[bj + k] /= at(k, k);
                            }
                            let bk = b[bj + k];
                            for i in k + 1..m {
                                b[bj + i] -= bk * at(i, k);
                            }
                        }
                    }
                }
            }
        } else {
            // B := alpha * inv(A^T) * B
            for j in 0..n {
                let bj = j * ldb;
                if upper {
                    for i in 0..m {
                        let mut temp = alpha * b[bj + i];
                        for k in 0..i {
                            temp -= at(k, i) * b[bj + k];
                        }
                        if nounit {
                            temp /= at(i, i);
                        }
                        b[bj + i] = temp;
                    }
                } else {
                    for i in (0..m).rev() {
                        let mut temp = alpha * b[bj + i];
                        for k in i + 1..m {
                            temp -= at(k, i) * b[bj + k];
                        }
                        if nounit {
                            temp /= at(i, i);
                        }
                        b[bj + i] = temp;
                    }
                }
            }
        }
    } else if notrans {
        // B := alpha * B * inv(A)
        let js: Vec<usize> = if upper { (0..n).collect() } else { (0..n).rev().collect() };
        for j in js {
            let bj = j * ldb;
            if alpha != one {
                for i in 0..m {
                    b[bj + i] *= alpha;
                }
            }
            let ks: Vec<usize> = if upper { (0..j).collect() } else { (j + 1..n).collect() };
            for k in ks {
                let akj = at(k, j);
                if !akj.is_zero() {
                    for i in 0..m {
                        let bik = b[i + k * ldb];
                        b[bj + i] -= akj * bik;
                    }
                }
            }
            if nounit {
                let temp = one / at(j, j);
                for i in 0..m {
                    b[bj + i] *= temp;
                }
            }
        }
    } else {
        // B := alpha * B * inv(A^T)
        let ks: Vec<usize> = if upper { (0..n).rev().collect() } else { (0..n).collect() };
        for k in ks {
            let bk = k * ldb;
            if nounit {
                let temp = one / at(k, k);
                for i in 0..m {
                    b[bk + i] *= temp;
                }
            }
            let js: Vec<usize> = if upper { (0..k).collect() } else { (k + 1..n).collect() };
            for j in js {
                let ajk = at(j, k);
                if !ajk.is_zero() {
                    for i in 0..m {
                        let bik = b[bk + i];
                        b[i + j * ldb] -= ajk * bik;
                    }
                }
            }
            if alpha != one {
                for i in 0..m {
                    b[bk + i] *= alpha;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gemm_small_by_hand() {
        // [[1, 2], [3, 4]] * [[5, 6], [7, 8]] = [[19, 22], [43, 50]]
        let a = [1.0, 3.0, 2.0, 4.0];
        let b = [5.0, 7.0, 6.0, 8.0];
        let mut c = [1.0; 4];
        rgemm('N', 'N', 2, 2, 2, 1.0, &a, 2, &b, 2, 0.0, &mut c, 2).unwrap();
        assert_eq!(c, [19.0, 43.0, 22.0, 50.0]);
        let mut c = [1.0; 4];
        rgemm('T', 't', 2, 2, 2, 1.0, &a, 2, &b, 2, 1.0, &mut c, 2).unwrap();
        // A^T B^T = (B A)^T; B A = [[23, 34], [31, 46]]
        assert_eq!(c, [24.0, 35.0, 32.0, 47.0]);
    }

    #[test]
    fn gemm_beta_zero_clears_nan() {
        let mut c = [f64::NAN; 1];
        rgemm('N', 'N', 1, 1, 1, 0.0, &[1.0], 1, &[1.0], 1, 0.0, &mut c, 1).unwrap();
        assert_eq!(c, [0.0]);
    }

    #[test]
    fn gemm_error_positions() {
        let z = [0.0; 4];
        let mut c = [0.0; 4];
        let mut run = |ta, tb, m, n, k, lda, ldb, ldc| {
            rgemm(ta, tb, m, n, k, 1.0, &z, lda, &z, ldb, 0.0, &mut c, ldc).unwrap_err().arg
        };
        assert_eq!(run('Q', 'N', 2, 2, 2, 2, 2, 2), 1);
        assert_eq!(run('N', 'Q', 2, 2, 2, 2, 2, 2), 2);
        assert_eq!(run('N', 'N', -1, 2, 2, 2, 2, 2), 3);
        assert_eq!(run('N', 'N', 2, -1, 2, 2, 2, 2), 4);
        assert_eq!(run('N', 'N', 2, 2, -1, 2, 2, 2), 5);
        assert_eq!(run('N', 'N', 2, 2, 2, 1, 2, 2), 8);
        assert_eq!(run('N', 'N', 2, 2, 2, 2, 1, 2), 10);
        assert_eq!(run('N', 'N', 2, 2, 2, 2, 2, 1), 13);
    }

    #[test]
    fn syrk_touches_only_one_triangle() {
        let a = [1.0, 2.0]; // 2x1
        let mut c = [f64::NAN; 4];
        c[0] = 0.0;
        c[2] = 0.0;
        c[3] = 0.0;
        rsyrk('U', 'N', 2, 1, 1.0, &a, 2, 0.0, &mut c, 2).unwrap();
        assert_eq!(c[0], 1.0);
        assert_eq!(c[2], 2.0);
        assert_eq!(c[3], 4.0);
        assert!(c[1].is_nan());
        assert_eq!(rsyrk('X', 'N', 2, 1, 1.0, &a, 2, 0.0, &mut c, 2).unwrap_err().arg, 1);
        assert_eq!(rsyrk('U', 'N', 2, 1, 1.0, &a, 1, 0.0, &mut c, 2).unwrap_err().arg, 7);
    }

    #[test]
    fn trsm_all_sides_undo_multiplication() {
        // A upper = [[2, 1], [0, 4]], L = A^T.
        let up = [2.0, 0.0, 1.0, 4.0];
        let lo = [2.0, 1.0, 0.0, 4.0];
        let x = [1.0, -3.0, 2.0, 5.0];
        for (side, uplo, trans, a) in [
            ('L', 'U', 'N', up),
            ('L', 'U', 'T', up),
            ('L', 'L', 'N', lo),
            ('L', 'L', 'T', lo),
            ('R', 'U', 'N', up),
            ('R', 'U', 'T', up),
            ('R', 'L', 'N', lo),
            ('R', 'L', 'T', lo),
        ] {
            let mut b = [0.0; 4];
            let (ta, tb) = if trans == 'N' { ('N', 'N') } else { ('T', 'N') };
            if side == 'L' {
                rgemm(ta, tb, 2, 2, 2, 1.0, &a, 2, &x, 2, 0.0, &mut b, 2).unwrap();
            } else {
                rgemm('N', ta, 2, 2, 2, 1.0, &x, 2, &a, 2, 0.0, &mut b, 2).unwrap();
            }
            rtrsm(side, uplo, trans, 'N', 2, 2, 1.0, &a, 2, &mut b, 2).unwrap();
            assert_eq!(b, x, "{side}{uplo}{trans}");
        }
    }

    #[test]
    fn trsm_unit_diag_and_errors() {
        let a = [99.0, 3.0, 0.0, 99.0];
        let mut b = [1.0, 5.0];
        rtrsm('L', 'L', 'N', 'U', 2, 1, 2.0, &a, 2, &mut b, 2).unwrap();
        assert_eq!(b, [2.0, 4.0]);
        assert_eq!(rtrsm('L', 'L', 'N', 'X', 2, 1, 1.0, &a, 2, &mut b, 2).unwrap_err().arg, 4);
        assert_eq!(rtrsm('L', 'L', 'N', 'U', 2, 1, 1.0, &a, 2, &mut b, 1).unwrap_err().arg, 11);
    }
}
