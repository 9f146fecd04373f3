use super::{lsame, start_index, BlasError, IndexInt};
use crate::real::Real;

/// `y <- alpha * op(A) * x + beta * y` with `op(A)` = `A` (`'N'`) or `A^T` (`'T'`/`'C'`).
#[allow(clippy::too_many_arguments)]
pub fn rgemv<T: Real>(
    trans: char,
    m: IndexInt,
    n: IndexInt,
    alpha: T,
    a: &[T],
    lda: IndexInt,
    x: &[T],
    incx: IndexInt,
    beta: T,
    y: &mut [T],
    incy: IndexInt,
) -> Result<(), BlasError> {
    let info = if !lsame(trans, 'N') && !lsame(trans, 'T') && !lsame(trans, 'C') {
        1
    } else if m < 0 {
        2
    } else if n < 0 {
        3
    } else if lda < m.max(1) {
        6
    } else if incx == 0 {
        8
    } else if incy == 0 {
        11
    } else {
        0
    };
    if info != 0 {
        return Err(BlasError::new("Rgemv", info));
    }
    if m == 0 || n == 0 || (alpha.is_zero() && beta == T::one()) {
        return Ok(());
    }
    let notrans = lsame(trans, 'N');
    let (m, n, lda) = (m as usize, n as usize, lda as usize);
    let (lenx, leny) = if notrans { (n, m) } else { (m, n) };
    let kx = start_index(lenx, incx);
    let ky = start_index(leny, incy);
    let (incx, incy) = (incx as isize, incy as isize);

    if beta != T::one() {
        let mut iy = ky;
        for _ in 0..leny {
            let slot = &mut y[iy as usize];
            *slot = if beta.is_zero() { T::zero() } else { beta * *slot };
            iy += incy;
        }
    }
    if alpha.is_zero() {
        return Ok(());
    }
    if notrans {
        let mut jx = kx;
        for j in 0..n {
            let temp = alpha * x[jx as usize];
            let col = &a[j * lda..j * lda + m];
            let mut iy = ky;
            for &aij in col {
                y[iy as usize] += temp * aij;
                iy += incy;
            }
            jx += incx;
        }
    } else {
        let mut jy = ky;
        for j in 0..n {
            let col = &a[j * lda..j * lda + m];
            let mut temp = T::zero();
            let mut ix = kx;
            for &aij in col {
                temp += aij * x[ix as usize];
                ix += incx;
            }
            y[jy as usize] += alpha * temp;
            jy += incy;
        }
    }
    Ok(())
}

/// Rank-one update `A <- alpha * x * y^T + A`.
#[allow(clippy::too_many_arguments)]
pub fn rger<T: Real>(
    m: IndexInt,
    n: IndexInt,
    alpha: T,
    x: &[T],
    incx: IndexInt,
    y: &[T],
    incy: IndexInt,
    a: &mut [T],
    lda: IndexInt,
) -> Result<(), BlasError> {
    let info = if m < 0 {
        1
    } else if n < 0 {
        2
    } else if incx == 0 {
        5
    } else if incy == 0 {
        7
    } else if lda < m.max(1) {
        9
    } else {
        0
    };
    if info != 0 {
        return Err(BlasError::new("Rger", info));
    }
    if m == 0 || n == 0 || alpha.is_zero() {
        return Ok(());
    }
    let (m, n, lda) = (m as usize, n as usize, lda as usize);
    let kx = start_index(m, incx);
    let mut jy = start_index(n, incy);
    for j in 0..n {
        let yj = y[jy as usize];
        if !yj.is_zero() {
            let temp = alpha * yj;
            let mut ix = kx;
            for aij in &mut a[j * lda..j * lda + m] {
                *aij += x[ix as usize] * temp;
                ix += incx as isize;
            }
        }
        jy += incy as isize;
    }
    Ok(())
}
