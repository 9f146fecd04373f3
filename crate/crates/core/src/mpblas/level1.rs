use super::{start_index, IndexInt};
use crate::real::Real;

/// Block length of the dot-product reduction. Partial sums over consecutive
/// blocks are combined left to right, so the sequential and threaded dot
/// products share one summation order.
pub const DOT_BLOCK: usize = 4096;

#[inline]
fn positions(n: usize, inc: IndexInt) -> impl Iterator<Item = usize> {
    let start = start_index(n, inc);
    (0..n).map(move |k| (start + k as isize * inc as isize) as usize)
}

/// `y <- alpha * x + y`.
pub fn raxpy<T: Real>(n: IndexInt, alpha: T, x: &[T], incx: IndexInt, y: &mut [T], incy: IndexInt) {
    if n <= 0 || alpha.is_zero() {
        return;
    }
    let n = n as usize;
    if incx == 1 && incy == 1 {
        for (yi, &xi) in y[..n].iter_mut().zip(&x[..n]) {
            *yi += alpha * xi;
        }
        return;
    }
    for (ix, iy) in positions(n, incx).zip(positions(n, incy)) {
        y[iy] += alpha * x[ix];
    }
}

/// `sum(x_i * y_i)`, accumulated in ascending index order within blocks of
/// [`DOT_BLOCK`] elements; block sums are then added left to right.
pub fn rdot<T: Real>(n: IndexInt, x: &[T], incx: IndexInt, y: &[T], incy: IndexInt) -> T {
    if n <= 0 {
        return T::zero();
    }
    let n = n as usize;
    let mut total = T::zero();
    let mut block = 0;
    while block < n {
        let len = DOT_BLOCK.min(n - block);
        total += dot_block(block, len, n, x, incx, y, incy);
        block += len;
    }
    total
}

/// Sum over elements `first..first + len` of the logical vectors.
pub(crate) fn dot_block<T: Real>(
    first: usize,
    len: usize,
    n: usize,
    x: &[T],
    incx: IndexInt,
    y: &[T],
    incy: IndexInt,
) -> T {
    let mut acc = T::zero();
    if incx == 1 && incy == 1 {
        for (&a, &b) in x[first..first + len].iter().zip(&y[first..first + len]) {
            acc += a * b;
        }
        return acc;
    }
    let sx = start_index(n, incx);
    let sy = start_index(n, incy);
    for k in first..first + len {
        let ix = (sx + k as isize * incx as isize) as usize;
        let iy = (sy + k as isize * incy as isize) as usize;
        acc += x[ix] * y[iy];
    }
    acc
}

/// Euclidean norm with running rescaling, so neither tiny nor huge entries
/// underflow or overflow when squared.
pub fn rnrm2<T: Real>(n: IndexInt, x: &[T], incx: IndexInt) -> T {
    if n < 1 || incx < 1 {
        return T::zero();
    }
    if n == 1 {
        return x[0].abs();
    }
    let mut scale = T::zero();
    let mut ssq = T::one();
    for ix in positions(n as usize, incx) {
        let v = x[ix];
        if !v.is_zero() {
            let a = v.abs();
            if scale < a {
                let r = scale / a;
                ssq = T::one() + ssq * r * r;
                scale = a;
            } else {
                let r = a / scale;
                ssq += r * r;
            }
        }
    }
    scale * ssq.sqrt()
}

/// 1-based index of the first entry of largest magnitude; 0 when `n < 1`.
pub fn iramax<T: Real>(n: IndexInt, x: &[T], incx: IndexInt) -> IndexInt {
    if n < 1 || incx <= 0 {
        return 0;
    }
    let mut best = 1;
    let mut best_abs = x[0].abs();
    for (k, ix) in positions(n as usize, incx).enumerate().skip(1) {
        let a = x[ix].abs();
        if a > best_abs {
            best_abs = a;
            best = k as IndexInt + 1;
        }
    }
    best
}

pub fn rasum<T: Real>(n: IndexInt, x: &[T], incx: IndexInt) -> T {
    if n <= 0 || incx <= 0 {
        return T::zero();
    }
    positions(n as usize, incx).fold(T::zero(), |s, ix| s + x[ix].abs())
}

/// `x <- alpha * x`.
pub fn rscal<T: Real>(n: IndexInt, alpha: T, x: &mut [T], incx: IndexInt) {
    if n <= 0 || incx <= 0 {
        return;
    }
    for ix in positions(n as usize, incx) {
        x[ix] *= alpha;
    }
}

pub fn rcopy<T: Real>(n: IndexInt, x: &[T], incx: IndexInt, y: &mut [T], incy: IndexInt) {
    if n <= 0 {
        return;
    }
    for (ix, iy) in positions(n as usize, incx).zip(positions(n as usize, incy)) {
        y[iy] = x[ix];
    }
}

pub fn rswap<T: Real>(n: IndexInt, x: &mut [T], incx: IndexInt, y: &mut [T], incy: IndexInt) {
    if n <= 0 {
        return;
    }
    for (ix, iy) in positions(n as usize, incx).zip(positions(n as usize, incy)) {
        std::mem::swap(&mut x[ix], &mut y[iy]);
    }
}
