//! Threaded variants. Work is split into disjoint output ranges and every
//! output element is computed by the same arithmetic sequence as the
//! sequential routine, so results are bitwise identical for any thread count.

use std::thread;

use super::level1::{dot_block, raxpy, DOT_BLOCK};
use super::level3::{gemm_check, gemm_panel};
use super::{BlasError, IndexInt};
use crate::real::Real;

fn split(total: usize, parts: usize) -> impl Iterator<Item = (usize, usize)> {
    let parts = parts.clamp(1, total.max(1));
    let base = total / parts;
    let extra = total % parts;
    (0..parts).scan(0, move |start, p| {
        let len = base + usize::from(p < extra);
        let s = *start;
        *start += len;
        Some((s, len))
    })
}

/// Threaded [`raxpy`](super::raxpy). Strided calls run sequentially.
pub fn raxpy_par<T: Real>(
    n: IndexInt,
    alpha: T,
    x: &[T],
    incx: IndexInt,
    y: &mut [T],
    incy: IndexInt,
    threads: usize,
) {
    if n <= 0 || alpha.is_zero() {
        return;
    }
    if threads <= 1 || incx != 1 || incy != 1 {
        raxpy(n, alpha, x, incx, y, incy);
        return;
    }
    let n = n as usize;
    thread::scope(|s| {
        let mut rest = &mut y[..n];
        for (start, len) in split(n, threads) {
            let (chunk, tail) = rest.split_at_mut(len);
            rest = tail;
            let xs = &x[start..start + len];
            s.spawn(move || {
                for (yi, &xi) in chunk.iter_mut().zip(xs) {
                    *yi += alpha * xi;
                }
            });
        }
    });
}

/// Threaded [`rdot`](super::rdot): blocks are distributed across threads and
/// the block sums are reduced in index order.
pub fn rdot_par<T: Real>(n: IndexInt, x: &[T], incx: IndexInt, y: &[T], incy: IndexInt, threads: usize) -> T {
    if n <= 0 {
        return T::zero();
    }
    let n = n as usize;
    let nblocks = n.div_ceil(DOT_BLOCK);
    let mut sums = vec![T::zero(); nblocks];
    thread::scope(|s| {
        let mut rest = &mut sums[..];
        for (b0, nb) in split(nblocks, threads) {
            let (chunk, tail) = rest.split_at_mut(nb);
            rest = tail;
            s.spawn(move || {
                for (off, out) in chunk.iter_mut().enumerate() {
                    let first = (b0 + off) * DOT_BLOCK;
                    let len = DOT_BLOCK.min(n - first);
                    *out = dot_block(first, len, n, x, incx, y, incy);
                }
            });
        }
    });
    sums.into_iter().fold(T::zero(), |acc, v| acc + v)
}

/// Threaded [`rgemm`](super::rgemm): columns of `C` are partitioned into
/// contiguous panels, one per thread.
#[allow(clippy::too_many_arguments)]
pub fn rgemm_par<T: Real>(
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
    threads: usize,
) -> Result<(), BlasError> {
    let Some(shape) = gemm_check(transa, transb, m, n, k, alpha, lda, ldb, beta, ldc)? else {
        return Ok(());
    };
    let (n, lda, ldb, ldc) = (n as usize, lda as usize, ldb as usize, ldc as usize);
    let c = &mut c[..(n - 1) * ldc + shape.m];
    if threads <= 1 || n == 1 {
        gemm_panel(shape, 0, n, alpha, a, lda, b, ldb, beta, c, ldc);
        return Ok(());
    }
    thread::scope(|s| {
        let mut rest = c;
        for (j0, ncols) in split(n, threads) {
            let take = if j0 + ncols == n { rest.len() } else { ncols * ldc };
            let (panel, tail) = std::mem::take(&mut rest).split_at_mut(take);
            rest = tail;
            s.spawn(move || gemm_panel(shape, j0, ncols, alpha, a, lda, b, ldb, beta, panel, ldc));
        }
    });
    Ok(())
}
