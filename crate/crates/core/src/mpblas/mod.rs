//! Precision-generic BLAS subset.
//!
//! Routines keep the reference BLAS argument lists: dimensions and increments
//! are signed [`IndexInt`], flags are single characters (case-insensitive),
//! and matrices are column-major slices with an explicit leading dimension.
//! Invalid arguments are reported as a [`BlasError`] carrying the 1-based
//! position of the offending argument in the reference routine.

mod complex;
mod level1;
mod level2;
mod level3;
mod matrix;
mod parallel;

pub use complex::cgemm;
pub use level1::{iramax, rasum, raxpy, rcopy, rdot, rnrm2, rscal, rswap, DOT_BLOCK};
pub use level2::{rgemv, rger};
pub use level3::{rgemm, rsyrk, rtrsm};
pub use matrix::Matrix;
pub use parallel::{raxpy_par, rdot_par, rgemm_par};

/// Signed index type used for dimensions, strides and pivots.
pub type IndexInt = i64;

/// Argument error raised by a BLAS or LAPACK routine.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("On entry to {routine} parameter number {arg} had an illegal value")]
pub struct BlasError {
    pub routine: &'static str,
    pub arg: IndexInt,
}

impl BlasError {
    pub fn new(routine: &'static str, arg: IndexInt) -> Self {
        BlasError { routine, arg }
    }
}

/// Case-insensitive flag comparison, like `lsame`.
#[inline]
pub(crate) fn lsame(c: char, expected: char) -> bool {
    c.eq_ignore_ascii_case(&expected)
}

/// Starting offset for a strided vector of length `n`, following the
/// reference rule that negative increments walk from the far end.
#[inline]
pub(crate) fn start_index(n: usize, inc: IndexInt) -> isize {
    if inc < 0 {
        (1 - n as isize) * inc as isize
    } else {
        0
    }
}
