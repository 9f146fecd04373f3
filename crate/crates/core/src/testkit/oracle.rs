//! Naive binary64 BLAS used as the comparison oracle.
//!
//! These are written from the reference definitions with plain index
//! arithmetic and share no code with `mpblas`, so agreement between the two
//! is evidence rather than self-confirmation. Argument checks return the
//! reference argument position so error-code parity can be asserted.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::gen::{derive_seed, rng, uniform, uniform_vec};
use super::report::ResidualReport;
use crate::mpblas::{self, BlasError, IndexInt};
use crate::real::Real;

fn at(k: usize, n: usize, inc: IndexInt) -> usize {
    if inc > 0 {
        k * inc as usize
    } else {
        (n - 1 - k) * inc.unsigned_abs() as usize
    }
}

fn is(flag: char, c: char) -> bool {
    flag.to_ascii_uppercase() == c
}

pub fn axpy(n: usize, alpha: f64, x: &[f64], incx: IndexInt, y: &mut [f64], incy: IndexInt) {
    if alpha == 0.0 {
        return;
    }
    for k in 0..n {
        y[at(k, n, incy)] += alpha * x[at(k, n, incx)];
    }
}

pub fn scal(n: usize, alpha: f64, x: &mut [f64], incx: IndexInt) {
    for k in 0..n {
        x[at(k, n, incx)] *= alpha;
    }
}

pub fn dot(n: usize, x: &[f64], incx: IndexInt, y: &[f64], incy: IndexInt) -> f64 {
    (0..n).map(|k| x[at(k, n, incx)] * y[at(k, n, incy)]).sum()
}

pub fn nrm2(n: usize, x: &[f64], incx: IndexInt) -> f64 {
    (0..n).map(|k| x[at(k, n, incx)].powi(2)).sum::<f64>().sqrt()
}

/// `y <- alpha op(A) x + beta y`. `Err(k)` names the bad argument.
#[allow(clippy::too_many_arguments)]
pub fn gemv(
    trans: char,
    m: IndexInt,
    n: IndexInt,
    alpha: f64,
    a: &[f64],
    lda: IndexInt,
    x: &[f64],
    incx: IndexInt,
    beta: f64,
    y: &mut [f64],
    incy: IndexInt,
) -> Result<(), IndexInt> {
    if !(is(trans, 'N') || is(trans, 'T') || is(trans, 'C')) {
        return Err(1);
    }
    if m < 0 {
        return Err(2);
    }
    if n < 0 {
        return Err(3);
    }
    if lda < m.max(1) {
        return Err(6);
    }
    if incx == 0 {
        return Err(8);
    }
    if incy == 0 {
        return Err(11);
    }
    let (m, n, lda) = (m as usize, n as usize, lda as usize);
    let t = !is(trans, 'N');
    let (leny, lenx) = if t { (n, m) } else { (m, n) };
    if leny == 0 {
        return Ok(());
    }
    for i in 0..leny {
        let mut s = 0.0;
        for j in 0..lenx {
            let aij = if t { a[j + i * lda] } else { a[i + j * lda] };
            s += aij * x[at(j, lenx, incx)];
        }
        let yi = &mut y[at(i, leny, incy)];
        *yi = if beta == 0.0 { alpha * s } else { alpha * s + beta * *yi };
    }
    Ok(())
}

/// `A <- alpha x y^T + A`.
#[allow(clippy::too_many_arguments)]
pub fn ger(
    m: IndexInt,
    n: IndexInt,
    alpha: f64,
    x: &[f64],
    incx: IndexInt,
    y: &[f64],
    incy: IndexInt,
    a: &mut [f64],
    lda: IndexInt,
) -> Result<(), IndexInt> {
    if m < 0 {
        return Err(1);
    }
    if n < 0 {
        return Err(2);
    }
    if incx == 0 {
        return Err(5);
    }
    if incy == 0 {
        return Err(7);
    }
    if lda < m.max(1) {
        return Err(9);
    }
    let (m, n, lda) = (m as usize, n as usize, lda as usize);
    for j in 0..n {
        for i in 0..m {
            a[i + j * lda] += alpha * x[at(i, m, incx)] * y[at(j, n, incy)];
        }
    }
    Ok(())
}

fn op_at(a: &[f64], lda: usize, t: bool, i: usize, j: usize) -> f64 {
    if t {
        a[j + i * lda]
    } else {
        a[i + j * lda]
    }
}

/// `C <- alpha op(A) op(B) + beta C`.
#[allow(clippy::too_many_arguments)]
pub fn gemm(
    transa: char,
    transb: char,
    m: IndexInt,
    n: IndexInt,
    k: IndexInt,
    alpha: f64,
    a: &[f64],
    lda: IndexInt,
    b: &[f64],
    ldb: IndexInt,
    beta: f64,
    c: &mut [f64],
    ldc: IndexInt,
) -> Result<(), IndexInt> {
    let valid = |f: char| is(f, 'N') || is(f, 'T') || is(f, 'C');
    if !valid(transa) {
        return Err(1);
    }
    if !valid(transb) {
        return Err(2);
    }
    if m < 0 {
        return Err(3);
    }
    if n < 0 {
        return Err(4);
    }
    if k < 0 {
        return Err(5);
    }
    let (ta, tb) = (!is(transa, 'N'), !is(transb, 'N'));
    if lda < (if ta { k } else { m }).max(1) {
        return Err(8);
    }
    if ldb < (if tb { n } else { k }).max(1) {
        return Err(10);
    }
    if ldc < m.max(1) {
        return Err(13);
    }
    let (m, n, k) = (m as usize, n as usize, k as usize);
    let (lda, ldb, ldc) = (lda as usize, ldb as usize, ldc as usize);
    for j in 0..n {
        for i in 0..m {
            let s: f64 = (0..k).map(|l| op_at(a, lda, ta, i, l) * op_at(b, ldb, tb, l, j)).sum();
            let cij = &mut c[i + j * ldc];
            *cij = if beta == 0.0 { alpha * s } else { alpha * s + beta * *cij };
        }
    }
    Ok(())
}

/// Rank-k update of one triangle of `C`.
#[allow(clippy::too_many_arguments)]
pub fn syrk(
    uplo: char,
    trans: char,
    n: IndexInt,
    k: IndexInt,
    alpha: f64,
    a: &[f64],
    lda: IndexInt,
    beta: f64,
    c: &mut [f64],
    ldc: IndexInt,
) -> Result<(), IndexInt> {
    if !(is(uplo, 'U') || is(uplo, 'L')) {
        return Err(1);
    }
    if !(is(trans, 'N') || is(trans, 'T') || is(trans, 'C')) {
        return Err(2);
    }
    if n < 0 {
        return Err(3);
    }
    if k < 0 {
        return Err(4);
    }
    let t = !is(trans, 'N');
    if lda < (if t { k } else { n }).max(1) {
        return Err(7);
    }
    if ldc < n.max(1) {
        return Err(10);
    }
    let (n, k, lda, ldc) = (n as usize, k as usize, lda as usize, ldc as usize);
    let upper = is(uplo, 'U');
    for j in 0..n {
        for i in 0..n {
            if (upper && i > j) || (!upper && i < j) {
                continue;
            }
            // op(A) op(A)^T with op(A) = A (n x k) or A^T.
            let s: f64 = (0..k).map(|l| op_at(a, lda, t, i, l) * op_at(a, lda, t, j, l)).sum();
            let cij = &mut c[i + j * ldc];
            *cij = if beta == 0.0 { alpha * s } else { alpha * s + beta * *cij };
        }
    }
    Ok(())
}

/// Triangular solve with multiple right-hand sides, via the explicit
/// dense `op(A)` and textbook substitution.
#[allow(clippy::too_many_arguments)]
pub fn trsm(
    side: char,
    uplo: char,
    transa: char,
    diag: char,
    m: IndexInt,
    n: IndexInt,
    alpha: f64,
    a: &[f64],
    lda: IndexInt,
    b: &mut [f64],
    ldb: IndexInt,
) -> Result<(), IndexInt> {
    if !(is(side, 'L') || is(side, 'R')) {
        return Err(1);
    }
    if !(is(uplo, 'U') || is(uplo, 'L')) {
        return Err(2);
    }
    if !(is(transa, 'N') || is(transa, 'T') || is(transa, 'C')) {
        return Err(3);
    }
    if !(is(diag, 'U') || is(diag, 'N')) {
        return Err(4);
    }
    if m < 0 {
        return Err(5);
    }
    if n < 0 {
        return Err(6);
    }
    let left = is(side, 'L');
    let na = if left { m } else { n };
    if lda < na.max(1) {
        return Err(9);
    }
    if ldb < m.max(1) {
        return Err(11);
    }
    let (m, n, na, lda, ldb) = (m as usize, n as usize, na as usize, lda as usize, ldb as usize);
    let upper = is(uplo, 'U');
    let t = !is(transa, 'N');
    let unit = is(diag, 'U');
    // Dense op(A), then for side = 'R' transpose the system:
    // X op(A) = alpha B  <=>  op(A)^T X^T = alpha B^T.
    let mut op = vec![0.0; na * na];
    for j in 0..na {
        for i in 0..na {
            let stored = (upper && i <= j) || (!upper && i >= j);
            let v = if !stored {
                0.0
            } else if i == j && unit {
                1.0
            } else {
                a[i + j * lda]
            };
            let (r, c) = if t { (j, i) } else { (i, j) };
            op[r + c * na] = v;
        }
    }
    let mut lower = upper == t;
    if !left {
        op = (0..na * na).map(|p| op[(p / na) + (p % na) * na]).collect();
        lower = !lower;
    }
    let nrhs = if left { n } else { m };
    for r in 0..nrhs {
        let get = |b: &[f64], i: usize| if left { b[i + r * ldb] } else { b[r + i * ldb] };
        let mut x = vec![0.0; na];
        let order: Vec<usize> = if lower { (0..na).collect() } else { (0..na).rev().collect() };
        for &i in &order {
            let mut s = alpha * get(b, i);
            for (l, xl) in x.iter().enumerate() {
                if l != i {
                    s -= op[i + l * na] * xl;
                }
            }
            x[i] = s / op[i + i * na];
        }
        for (i, xi) in x.into_iter().enumerate() {
            if left {
                b[i + r * ldb] = xi;
            } else {
                b[r + i * ldb] = xi;
            }
        }
    }
    Ok(())
}

/// BLAS routines with a binary64 oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlasRoutine {
    Raxpy,
    Rscal,
    Rdot,
    Rnrm2,
    Rgemv,
    Rger,
    Rgemm,
    Rsyrk,
    Rtrsm,
}

impl BlasRoutine {
    pub const ALL: [BlasRoutine; 9] = [
        BlasRoutine::Raxpy,
        BlasRoutine::Rscal,
        BlasRoutine::Rdot,
        BlasRoutine::Rnrm2,
        BlasRoutine::Rgemv,
        BlasRoutine::Rger,
        BlasRoutine::Rgemm,
        BlasRoutine::Rsyrk,
        BlasRoutine::Rtrsm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BlasRoutine::Raxpy => "Raxpy",
            BlasRoutine::Rscal => "Rscal",
            BlasRoutine::Rdot => "Rdot",
            BlasRoutine::Rnrm2 => "Rnrm2",
            BlasRoutine::Rgemv => "Rgemv",
            BlasRoutine::Rger => "Rger",
            BlasRoutine::Rgemm => "Rgemm",
            BlasRoutine::Rsyrk => "Rsyrk",
            BlasRoutine::Rtrsm => "Rtrsm",
        }
    }
}

impl fmt::Display for BlasRoutine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BlasRoutine {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BlasRoutine::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("no binary64 oracle for {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("{routine}: error-code parity broken (mpblas {ours:?}, oracle {oracle:?})")]
    Parity { routine: &'static str, ours: Option<IndexInt>, oracle: Option<IndexInt> },
    #[error("{routine}: valid call rejected: {source}")]
    Rejected { routine: &'static str, source: BlasError },
}

fn lift<T: Real>(v: &[f64]) -> Vec<T> {
    v.iter().map(|&x| T::from_f64(x)).collect()
}

fn max_abs_diff<T: Real>(ours: &[T], oracle: &[f64]) -> f64 {
    ours.iter().zip(oracle).map(|(o, r)| (o.to_f64() - r).abs()).fold(0.0, f64::max)
}

/// `diff / (dim * eps64 * scale)`, with 0/0 read as 0.
fn oracle_ratio(diff: f64, dim: usize, scale: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else if scale == 0.0 {
        f64::INFINITY
    } else {
        diff / (dim as f64 * (f64::EPSILON / 2.0) * scale)
    }
}

fn pick<R: Rng, const N: usize>(r: &mut R, opts: [char; N]) -> char {
    opts[r.gen_range(0..N)]
}

fn pick_inc<R: Rng>(r: &mut R) -> IndexInt {
    [1, 2, -1, -3][r.gen_range(0..4)]
}

fn strided_len(n: usize, inc: IndexInt) -> usize {
    if n == 0 {
        0
    } else {
        1 + (n - 1) * inc.unsigned_abs() as usize
    }
}

fn parity(routine: &'static str, ours: Result<(), BlasError>, oracle: Result<(), IndexInt>) -> Result<(), OracleError> {
    let o = ours.err().map(|e| e.arg);
    let r = oracle.err();
    if o == r {
        Ok(())
    } else {
        Err(OracleError::Parity { routine, ours: o, oracle: r })
    }
}

fn accept(routine: &'static str, r: Result<(), BlasError>) -> Result<(), OracleError> {
    r.map_err(|source| OracleError::Rejected { routine, source })
}

/// Runs `routine` at precision `T` and through the binary64 oracle on the
/// same binary64-exact random inputs of size `n`, and reports the largest
/// elementwise gap of the `T` result rounded to binary64 as
/// `gap / (dim * eps64 * scale)`.
///
/// `scale` and `dim` come from the classical forward error bound of the
/// binary64 computation for each routine: the magnitude sum
/// `|alpha| sum |a_il b_lj| + |beta c_ij|` with `dim = k + 2` for products,
/// and `3 max |x|` for `Rtrsm`, whose triangular factor is generated
/// strictly diagonally dominant so that `|op(A)^-1| |op(A)| <= 3`.
///
/// Routines that validate arguments are also called with an invalid first
/// argument and with a negative dimension; both sides must report the same
/// argument position.
pub fn compare_vs_oracle<T: Real>(
    routine: BlasRoutine,
    n: usize,
    seed: u64,
    threshold: f64,
) -> Result<ResidualReport, OracleError> {
    let mut r = rng(derive_seed(seed, &[routine as u64, n as u64]));
    let name = routine.name();
    let ni = n as IndexInt;
    let ld = n.max(1);
    let ldi = ld as IndexInt;
    let alpha = uniform(&mut r);
    let beta = uniform(&mut r);
    let (gap, dim, scale) = match routine {
        BlasRoutine::Raxpy => {
            let (incx, incy) = (pick_inc(&mut r), pick_inc(&mut r));
            let x = uniform_vec(&mut r, strided_len(n, incx));
            let y0 = uniform_vec(&mut r, strided_len(n, incy));
            let mut y = y0.clone();
            axpy(n, alpha, &x, incx, &mut y, incy);
            let mut yt = lift::<T>(&y0);
            mpblas::raxpy(ni, T::from_f64(alpha), &lift::<T>(&x), incx, &mut yt, incy);
            let scale = (0..n)
                .map(|k| (alpha * x[at(k, n, incx)]).abs() + y0[at(k, n, incy)].abs())
                .fold(0.0, f64::max);
            (max_abs_diff(&yt, &y), 2, scale)
        }
        BlasRoutine::Rscal => {
            let incx = pick_inc(&mut r).abs();
            let x0 = uniform_vec(&mut r, strided_len(n, incx));
            let mut x = x0.clone();
            scal(n, alpha, &mut x, incx);
            let mut xt = lift::<T>(&x0);
            mpblas::rscal(ni, T::from_f64(alpha), &mut xt, incx);
            let scale = x0.iter().fold(0.0, |m, v| f64::max(m, (alpha * v).abs()));
            (max_abs_diff(&xt, &x), 1, scale)
        }
        BlasRoutine::Rdot => {
            let (incx, incy) = (pick_inc(&mut r), pick_inc(&mut r));
            let x = uniform_vec(&mut r, strided_len(n, incx));
            let y = uniform_vec(&mut r, strided_len(n, incy));
            let d = dot(n, &x, incx, &y, incy);
            let dt = mpblas::rdot(ni, &lift::<T>(&x), incx, &lift::<T>(&y), incy);
            let scale: f64 = (0..n).map(|k| (x[at(k, n, incx)] * y[at(k, n, incy)]).abs()).sum();
            ((dt.to_f64() - d).abs(), n + 1, scale)
        }
        BlasRoutine::Rnrm2 => {
            let incx = pick_inc(&mut r).abs();
            let x = uniform_vec(&mut r, strided_len(n, incx));
            let v = nrm2(n, &x, incx);
            let vt = mpblas::rnrm2(ni, &lift::<T>(&x), incx);
            ((vt.to_f64() - v).abs(), n + 2, v)
        }
        BlasRoutine::Rgemv => {
            let trans = pick(&mut r, ['N', 'T', 'C']);
            let (incx, incy) = (pick_inc(&mut r), pick_inc(&mut r));
            let a = uniform_vec(&mut r, ld * n);
            let x = uniform_vec(&mut r, strided_len(n, incx));
            let y0 = uniform_vec(&mut r, strided_len(n, incy));
            let mut y = y0.clone();
            parity(
                name,
                mpblas::rgemv('X', ni, ni, T::one(), &[], ldi, &[], 1, T::one(), &mut [], 1),
                gemv('X', ni, ni, 1.0, &[], ldi, &[], 1, 1.0, &mut [], 1),
            )?;
            parity(
                name,
                mpblas::rgemv(trans, ni, -1, T::one(), &[], ldi, &[], 1, T::one(), &mut [], 1),
                gemv(trans, ni, -1, 1.0, &[], ldi, &[], 1, 1.0, &mut [], 1),
            )?;
            gemv(trans, ni, ni, alpha, &a, ldi, &x, incx, beta, &mut y, incy).expect("valid call");
            let mut yt = lift::<T>(&y0);
            accept(
                name,
                mpblas::rgemv(trans, ni, ni, T::from_f64(alpha), &lift::<T>(&a), ldi, &lift::<T>(&x), incx, T::from_f64(beta), &mut yt, incy),
            )?;
            let t = trans != 'N';
            let scale = (0..n)
                .map(|i| {
                    let s: f64 = (0..n).map(|j| (op_at(&a, ld, t, i, j) * x[at(j, n, incx)]).abs()).sum();
                    alpha.abs() * s + (beta * y0[at(i, n, incy)]).abs()
                })
                .fold(0.0, f64::max);
            (max_abs_diff(&yt, &y), n + 2, scale)
        }
        BlasRoutine::Rger => {
            let (incx, incy) = (pick_inc(&mut r), pick_inc(&mut r));
            let x = uniform_vec(&mut r, strided_len(n, incx));
            let y = uniform_vec(&mut r, strided_len(n, incy));
            let a0 = uniform_vec(&mut r, ld * n);
            parity(
                name,
                mpblas::rger(-1, ni, T::one(), &[], 1, &[], 1, &mut [], ldi),
                ger(-1, ni, 1.0, &[], 1, &[], 1, &mut [], ldi),
            )?;
            parity(
                name,
                mpblas::rger(ni, -2, T::one(), &[], 1, &[], 1, &mut [], ldi),
                ger(ni, -2, 1.0, &[], 1, &[], 1, &mut [], ldi),
            )?;
            let mut a = a0.clone();
            ger(ni, ni, alpha, &x, incx, &y, incy, &mut a, ldi).expect("valid call");
            let mut at_ = lift::<T>(&a0);
            accept(name, mpblas::rger(ni, ni, T::from_f64(alpha), &lift::<T>(&x), incx, &lift::<T>(&y), incy, &mut at_, ldi))?;
            let mut scale = 0.0f64;
            for j in 0..n {
                for i in 0..n {
                    scale = scale.max((alpha * x[at(i, n, incx)] * y[at(j, n, incy)]).abs() + a0[i + j * ld].abs());
                }
            }
            (max_abs_diff(&at_, &a), 2, scale)
        }
        BlasRoutine::Rgemm => {
            let (ta, tb) = (pick(&mut r, ['N', 'T', 'C']), pick(&mut r, ['N', 'T', 'C']));
            let a = uniform_vec(&mut r, ld * n);
            let b = uniform_vec(&mut r, ld * n);
            let c0 = uniform_vec(&mut r, ld * n);
            let (one, z) = (T::one(), T::zero());
            parity(
                name,
                mpblas::rgemm('X', tb, ni, ni, ni, one, &[], ldi, &[], ldi, z, &mut [], ldi),
                gemm('X', tb, ni, ni, ni, 1.0, &[], ldi, &[], ldi, 0.0, &mut [], ldi),
            )?;
            parity(
                name,
                mpblas::rgemm(ta, tb, ni, ni, -1, one, &[], ldi, &[], ldi, z, &mut [], ldi),
                gemm(ta, tb, ni, ni, -1, 1.0, &[], ldi, &[], ldi, 0.0, &mut [], ldi),
            )?;
            let mut c = c0.clone();
            gemm(ta, tb, ni, ni, ni, alpha, &a, ldi, &b, ldi, beta, &mut c, ldi).expect("valid call");
            let mut ct = lift::<T>(&c0);
            accept(
                name,
                mpblas::rgemm(ta, tb, ni, ni, ni, T::from_f64(alpha), &lift::<T>(&a), ldi, &lift::<T>(&b), ldi, T::from_f64(beta), &mut ct, ldi),
            )?;
            let (sa, sb) = (ta != 'N', tb != 'N');
            let mut scale = 0.0f64;
            for j in 0..n {
                for i in 0..n {
                    let s: f64 = (0..n).map(|l| (op_at(&a, ld, sa, i, l) * op_at(&b, ld, sb, l, j)).abs()).sum();
                    scale = scale.max(alpha.abs() * s + (beta * c0[i + j * ld]).abs());
                }
            }
            (max_abs_diff(&ct, &c), n + 2, scale)
        }
        BlasRoutine::Rsyrk => {
            let uplo = pick(&mut r, ['U', 'L']);
            let trans = pick(&mut r, ['N', 'T', 'C']);
            let a = uniform_vec(&mut r, ld * n);
            let c0 = uniform_vec(&mut r, ld * n);
            let (one, z) = (T::one(), T::zero());
            parity(
                name,
                mpblas::rsyrk('X', trans, ni, ni, one, &[], ldi, z, &mut [], ldi),
                syrk('X', trans, ni, ni, 1.0, &[], ldi, 0.0, &mut [], ldi),
            )?;
            parity(
                name,
                mpblas::rsyrk(uplo, trans, -1, ni, one, &[], ldi, z, &mut [], ldi),
                syrk(uplo, trans, -1, ni, 1.0, &[], ldi, 0.0, &mut [], ldi),
            )?;
            let mut c = c0.clone();
            syrk(uplo, trans, ni, ni, alpha, &a, ldi, beta, &mut c, ldi).expect("valid call");
            let mut ct = lift::<T>(&c0);
            accept(name, mpblas::rsyrk(uplo, trans, ni, ni, T::from_f64(alpha), &lift::<T>(&a), ldi, T::from_f64(beta), &mut ct, ldi))?;
            let t = trans != 'N';
            let mut scale = 0.0f64;
            for j in 0..n {
                for i in 0..n {
                    let s: f64 = (0..n).map(|l| (op_at(&a, ld, t, i, l) * op_at(&a, ld, t, j, l)).abs()).sum();
                    scale = scale.max(alpha.abs() * s + (beta * c0[i + j * ld]).abs());
                }
            }
            (max_abs_diff(&ct, &c), n + 2, scale)
        }
        BlasRoutine::Rtrsm => {
            let side = pick(&mut r, ['L', 'R']);
            let uplo = pick(&mut r, ['U', 'L']);
            let trans = pick(&mut r, ['N', 'T', 'C']);
            let diag = pick(&mut r, ['N', 'U']);
            let mut a = uniform_vec(&mut r, ld * n);
            // Off-diagonal entries are shrunk to at most 1/(2n) against a
            // diagonal of magnitude >= 1, so |op(A)^-1| |op(A)| stays below 3
            // in the infinity norm for unit and non-unit diagonals alike.
            for j in 0..n {
                for i in 0..n {
                    let v = &mut a[i + j * ld];
                    *v = if i == j { v.signum() + *v } else { *v / (2 * n) as f64 };
                }
            }
            let b0 = uniform_vec(&mut r, ld * n);
            let one = T::one();
            parity(
                name,
                mpblas::rtrsm('X', uplo, trans, diag, ni, ni, one, &[], ldi, &mut [], ldi),
                trsm('X', uplo, trans, diag, ni, ni, 1.0, &[], ldi, &mut [], ldi),
            )?;
            parity(
                name,
                mpblas::rtrsm(side, uplo, trans, diag, -1, ni, one, &[], ldi, &mut [], ldi),
                trsm(side, uplo, trans, diag, -1, ni, 1.0, &[], ldi, &mut [], ldi),
            )?;
            let mut b = b0.clone();
            trsm(side, uplo, trans, diag, ni, ni, alpha, &a, ldi, &mut b, ldi).expect("valid call");
            let mut bt = lift::<T>(&b0);
            accept(name, mpblas::rtrsm(side, uplo, trans, diag, ni, ni, T::from_f64(alpha), &lift::<T>(&a), ldi, &mut bt, ldi))?;
            let xmax = b.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
            (max_abs_diff(&bt, &b), n + 2, 3.0 * xmax)
        }
    };
    Ok(ResidualReport::new(format!("{name} vs binary64 oracle"), T::PRECISION, (n, n), oracle_ratio(gap, dim, scale))
        .with_seed(seed)
        .with_threshold(threshold))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DdReal;

    #[test]
    fn oracle_trsm_matches_hand_solution() {
        // [[2, 1], [0, 4]] X = [[4], [8]] -> X = [[1], [2]].
        let a = [2.0, 0.0, 1.0, 4.0];
        let mut b = [4.0, 8.0];
        trsm('L', 'U', 'N', 'N', 2, 1, 1.0, &a, 2, &mut b, 2).unwrap();
        assert_eq!(b, [1.0, 2.0]);
        // X [[2, 1], [0, 4]] = [[2, 9]] -> X = [[1, 2]].
        let mut b = [2.0, 9.0];
        trsm('R', 'U', 'N', 'N', 1, 2, 1.0, &a, 2, &mut b, 1).unwrap();
        assert_eq!(b, [1.0, 2.0]);
    }

    #[test]
    fn oracle_argument_positions() {
        assert_eq!(gemm('N', 'N', 2, 2, 2, 1.0, &[0.0; 4], 1, &[0.0; 4], 2, 0.0, &mut [0.0; 4], 2), Err(8));
        assert_eq!(gemv('N', 2, 2, 1.0, &[0.0; 4], 2, &[0.0; 2], 0, 0.0, &mut [0.0; 2], 1), Err(8));
        assert_eq!(syrk('U', 'N', 2, 2, 1.0, &[0.0; 4], 2, 0.0, &mut [0.0; 4], 1), Err(10));
    }

    #[test]
    fn every_routine_agrees_at_both_precisions() {
        for routine in BlasRoutine::ALL {
            for n in [0, 1, 2, 7, 16] {
                let rd = compare_vs_oracle::<DdReal>(routine, n, 5, 30.0).unwrap();
                assert!(rd.passed, "{rd}");
                let rf = compare_vs_oracle::<f64>(routine, n, 5, 30.0).unwrap();
                assert!(rf.passed, "{rf}");
            }
        }
    }

    #[test]
    fn zero_alpha_axpy_has_zero_ratio() {
        let x = [1.0, 2.0];
        let mut y = [3.0, 4.0];
        axpy(2, 0.0, &x, 1, &mut y, 1);
        let mut yd = [DdReal::from(3.0), DdReal::from(4.0)];
        mpblas::raxpy(2, DdReal::ZERO, &lift::<DdReal>(&x), 1, &mut yd, 1);
        assert_eq!(max_abs_diff(&yd, &y), 0.0);
    }

    #[test]
    fn routine_names_parse() {
        assert_eq!("rgemm".parse::<BlasRoutine>(), Ok(BlasRoutine::Rgemm));
        assert!("Rfoo".parse::<BlasRoutine>().is_err());
    }
}
