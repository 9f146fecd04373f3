//! Octave/Matlab literal output: `[ [ a, b]; [ c, d] ]`.

use mpkit::mpblas::Matrix;
use mpkit::{DdComplex, Real};

/// Digits after the decimal point for binary64 output.
pub const SHORT_DIGITS: usize = 16;
/// Digits after the decimal point for double-double output.
pub const LONG_DIGITS: usize = 32;

/// Fraction digits suited to the precision of `T`.
pub fn digits_for<T: Real>() -> usize {
    match T::PRECISION {
        mpkit::Precision::F64 => SHORT_DIGITS,
        mpkit::Precision::Dd => LONG_DIGITS,
    }
}

/// Signed scientific notation with `frac_digits` digits after the point,
/// e.g. `+2.10e+01` for `frac_digits = 2`.
pub fn format_num<T: Real>(x: T, frac_digits: usize) -> String {
    x.to_sci(frac_digits + 1)
}

pub fn format_complex(z: DdComplex, frac_digits: usize) -> String {
    format!("{}{}i", format_num(z.re, frac_digits), format_num(z.im, frac_digits))
}

fn literal<F: Fn(usize, usize) -> String>(rows: usize, cols: usize, entry: F) -> String {
    let body: Vec<String> = (0..rows)
        .map(|i| {
            let cells: Vec<String> = (0..cols).map(|j| entry(i, j)).collect();
            format!("[ {}]", cells.join(", "))
        })
        .collect();
    format!("[ {} ]", body.join("; "))
}

pub fn print_octave<T: Real>(m: &Matrix<T>, frac_digits: usize) -> String {
    literal(m.rows(), m.cols(), |i, j| format_num(m[(i, j)], frac_digits))
}

/// A column vector literal.
pub fn print_vector<T: Real>(v: &[T], frac_digits: usize) -> String {
    literal(v.len(), 1, |i, _| format_num(v[i], frac_digits))
}

pub fn print_complex_octave(m: &Matrix<DdComplex>, frac_digits: usize) -> String {
    literal(m.rows(), m.cols(), |i, j| format_complex(m[(i, j)], frac_digits))
}
