use std::ops::{Index, IndexMut};

use crate::real::Real;

/// Dense column-major matrix with an explicit leading dimension.
///
/// Element `(i, j)` (0-based) lives at `data[i + j * ld]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    ld: usize,
    data: Vec<T>,
}

impl<T: Copy + Default> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::zeros_with_ld(rows, cols, rows.max(1))
    }

    /// # Panics
    /// If `ld < max(1, rows)`.
    pub fn zeros_with_ld(rows: usize, cols: usize, ld: usize) -> Self {
        assert!(ld >= rows.max(1), "leading dimension {ld} < max(1, {rows})");
        Matrix {
            rows,
            cols,
            ld,
            data: vec![T::default(); ld * cols],
        }
    }

    /// Wraps existing column-major storage.
    ///
    /// # Panics
    /// If `ld < max(1, rows)` or `data` is shorter than `ld * cols`.
    pub fn from_col_major(rows: usize, cols: usize, ld: usize, data: Vec<T>) -> Self {
        assert!(ld >= rows.max(1), "leading dimension {ld} < max(1, {rows})");
        assert!(data.len() >= ld * cols, "storage too short for {rows}x{cols} with ld {ld}");
        Matrix { rows, cols, ld, data }
    }

    /// Builds a matrix from row-major nested rows.
    ///
    /// # Panics
    /// If the rows are ragged.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Self {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut out = Self::zeros(m, n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), n, "ragged row {i}");
            for (j, &v) in row.iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        out
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut out = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                out[(i, j)] = f(i, j);
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ld(&self) -> usize {
        self.ld
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self[(i, j)] = v;
    }

    pub fn col(&self, j: usize) -> &[T] {
        &self.data[j * self.ld..j * self.ld + self.rows]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn map<U: Copy + Default>(&self, mut f: impl FnMut(T) -> U) -> Matrix<U> {
        Matrix::from_fn(self.rows, self.cols, |i, j| f(self[(i, j)]))
    }

    /// Copy with `ld == rows`.
    pub fn compact(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)])
    }
}

impl<T: Real> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> T {
        (0..self.cols)
            .map(|j| self.col(j).iter().fold(T::zero(), |s, &v| s + v.abs()))
            .fold(T::zero(), T::max)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> T {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(T::zero(), |s, j| s + self[(i, j)].abs()))
            .fold(T::zero(), T::max)
    }

    /// Largest absolute entry.
    pub fn norm_max(&self) -> T {
        (0..self.cols)
            .flat_map(|j| self.col(j).iter().copied())
            .fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn from_f64(m: &Matrix<f64>) -> Self {
        m.map(T::from_f64)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols, "({i}, {j}) out of {}x{}", self.rows, self.cols);
        &self.data[i + j * self.ld]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols, "({i}, {j}) out of {}x{}", self.rows, self.cols);
        &mut self.data[i + j * self.ld]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_major_addressing() {
        let m = Matrix::<f64>::from_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]);
        assert_eq!(m.as_slice(), &[1.0, 4.0, 2.0, 5.0, 3.0, 6.0]);
        let p = Matrix::from_col_major(2, 2, 3, vec![1.0, 2.0, 99.0, 3.0, 4.0, 99.0]);
        assert_eq!(p[(1, 1)], 4.0);
        assert_eq!(p.col(1), &[3.0, 4.0]);
    }

    #[test]
    fn norms() {
        let m = Matrix::<f64>::from_rows(&[[1.0, -2.0], [-3.0, 4.0]]);
        assert_eq!(m.norm_one(), 6.0);
        assert_eq!(m.norm_inf(), 7.0);
        assert_eq!(m.norm_max(), 4.0);
    }

    #[test]
    #[should_panic]
    fn short_leading_dimension_rejected() {
        let _ = Matrix::<f64>::zeros_with_ld(3, 2, 2);
    }
}
