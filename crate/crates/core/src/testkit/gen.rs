//! Reproducible test-matrix generators.
//!
//! Random kinds draw exact binary64 values uniform in `[-1, 1]` from a
//! ChaCha8 stream seeded with the spec's 64-bit seed, so the f64 and dd
//! instantiations of a routine see bit-identical inputs on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::mpblas::Matrix;
use crate::real::Real;

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixKind {
    RandomUniform,
    /// Random uniform lower triangle mirrored to the upper one.
    RandomSymmetric,
    /// `M^T M + n I` for a random uniform `M`, formed in binary64.
    RandomSpd,
    Hilbert,
    Frank,
    /// Given diagonal, zero elsewhere.
    Diagonal(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixGenSpec {
    pub kind: MatrixKind,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
}

impl MatrixGenSpec {
    pub fn square(kind: MatrixKind, n: usize, seed: u64) -> Self {
        MatrixGenSpec { kind, m: n, n, seed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("{kind} matrices must be square, got {m}x{n}")]
    NotSquare { kind: &'static str, m: usize, n: usize },
    #[error("diagonal has {got} entries, expected {expected}")]
    DiagonalLength { got: usize, expected: usize },
}

/// The generator's RNG for `seed`.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws an exact binary64 value uniform in `[-1, 1]`.
pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-1.0..=1.0)
}

pub fn uniform_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| uniform(rng)).collect()
}

/// Mixes `parts` into `base` (splitmix64 finalizer per step) to give
/// independent, reproducible seeds for the matrices of one test case.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    parts.iter().fold(mix(base), |acc, &p| mix(acc ^ p))
}

fn need_square(kind: &'static str, spec: &MatrixGenSpec) -> Result<usize, GenError> {
    if spec.m == spec.n {
        Ok(spec.n)
    } else {
        Err(GenError::NotSquare { kind, m: spec.m, n: spec.n })
    }
}

/// Generates the binary64 content of a random or diagonal kind.
fn gen_f64(spec: &MatrixGenSpec) -> Result<Matrix<f64>, GenError> {
    let mut r = rng(spec.seed);
    let (m, n) = (spec.m, spec.n);
    Ok(match &spec.kind {
        MatrixKind::RandomUniform => Matrix::from_fn(m, n, |_, _| uniform(&mut r)),
        MatrixKind::RandomSymmetric => {
            let n = need_square("symmetric", spec)?;
            let mut a = Matrix::zeros(n, n);
            for j in 0..n {
                for i in j..n {
                    let v = uniform(&mut r);
                    a[(i, j)] = v;
                    a[(j, i)] = v;
                }
            }
            a
        }
        MatrixKind::RandomSpd => {
            let n = need_square("SPD", spec)?;
            let base = Matrix::from_fn(n, n, |_, _| uniform(&mut r));
            let mut a = Matrix::zeros(n, n);
            for j in 0..n {
                for i in j..n {
                    let mut s = 0.0;
                    for k in 0..n {
                        s += base[(k, i)] * base[(k, j)];
                    }
                    if i == j {
                        s += n as f64;
                    }
                    a[(i, j)] = s;
                    a[(j, i)] = s;
                }
            }
            a
        }
        MatrixKind::Diagonal(d) => {
            let expected = m.min(n);
            if d.len() != expected {
                return Err(GenError::DiagonalLength { got: d.len(), expected });
            }
            Matrix::from_fn(m, n, |i, j| if i == j { d[i] } else { 0.0 })
        }
        MatrixKind::Hilbert | MatrixKind::Frank => unreachable!("exact kinds are built per precision"),
    })
}

/// Builds the matrix described by `spec` at precision `T`.
///
/// Hilbert entries `1/(i+j-1)` are rounded once to `T`; Frank entries are
/// `n - max(i,j) + 1` on and above the subdiagonal, zero below it.
pub fn gen_matrix<T: Real>(spec: &MatrixGenSpec) -> Result<Matrix<T>, GenError> {
    match spec.kind {
        MatrixKind::Hilbert => {
            let n = need_square("Hilbert", spec)?;
            Ok(Matrix::from_fn(n, n, |i, j| T::from_ratio(1, (i + j + 1) as i64)))
        }
        MatrixKind::Frank => {
            let n = need_square("Frank", spec)?;
            Ok(Matrix::from_fn(n, n, |i, j| {
                if j + 1 >= i {
                    T::from_i64((n - i.max(j)) as i64)
                } else {
                    T::zero()
                }
            }))
        }
        _ => Ok(Matrix::from_f64(&gen_f64(spec)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DdReal;

    #[test]
    fn hilbert_two() {
        let h: Matrix<f64> = gen_matrix(&MatrixGenSpec::square(MatrixKind::Hilbert, 2, 0)).unwrap();
        assert_eq!(h, Matrix::from_rows(&[[1.0, 0.5], [0.5, 1.0 / 3.0]]));
        let hd: Matrix<DdReal> = gen_matrix(&MatrixGenSpec::square(MatrixKind::Hilbert, 2, 0)).unwrap();
        assert_eq!(hd[(1, 1)] * DdReal::from(3.0), DdReal::from(1.0));
    }

    #[test]
    fn frank_three() {
        let f: Matrix<f64> = gen_matrix(&MatrixGenSpec::square(MatrixKind::Frank, 3, 0)).unwrap();
        assert_eq!(f, Matrix::from_rows(&[[3.0, 2.0, 1.0], [2.0, 2.0, 1.0], [0.0, 1.0, 1.0]]));
    }

    #[test]
    fn same_seed_same_matrix_at_both_precisions() {
        let spec = MatrixGenSpec { kind: MatrixKind::RandomUniform, m: 4, n: 3, seed: 42 };
        let a: Matrix<f64> = gen_matrix(&spec).unwrap();
        assert_eq!(a, gen_matrix(&spec).unwrap());
        let d: Matrix<DdReal> = gen_matrix(&spec).unwrap();
        assert_eq!(d.to_f64(), a);
        assert!(a.as_slice().iter().all(|v| (-1.0..=1.0).contains(v)));
        let other: Matrix<f64> = gen_matrix(&MatrixGenSpec { seed: 43, ..spec }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn symmetric_and_spd_are_symmetric() {
        for kind in [MatrixKind::RandomSymmetric, MatrixKind::RandomSpd] {
            let a: Matrix<f64> = gen_matrix(&MatrixGenSpec::square(kind, 5, 7)).unwrap();
            assert_eq!(a, a.transpose());
        }
    }

    #[test]
    fn shape_errors() {
        let bad = MatrixGenSpec { kind: MatrixKind::Hilbert, m: 2, n: 3, seed: 0 };
        assert!(matches!(gen_matrix::<f64>(&bad), Err(GenError::NotSquare { .. })));
        let diag = MatrixGenSpec::square(MatrixKind::Diagonal(vec![1.0]), 2, 0);
        assert_eq!(gen_matrix::<f64>(&diag), Err(GenError::DiagonalLength { got: 1, expected: 2 }));
    }
}
