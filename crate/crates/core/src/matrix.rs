//! Dense row-major matrices over any [`Scalar`].
//!
//! Elimination pivots on exact nonzero tests when the scalar is exact, and
//! on largest magnitude otherwise. The spectral norm is the one quantity
//! computed in floating point regardless of the scalar type.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::scalar::{format_rational, Rational, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RatMatrix = Matrix<Rational>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(diag: Vec<T>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return domain("ragged rows");
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return domain(format!(
                "shape mismatch: {}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            ));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a.clone() * b.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return domain(format!("vector length {} for {} columns", v.len(), self.cols));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a.clone() * x.clone());
                    }
                }
                acc
            })
            .collect())
    }

    /// `M · Mᵀ`.
    pub fn gram(&self) -> Self {
        let mut out = Self::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(self.row(j)) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a.clone() * b.clone());
                    }
                }
                out[(j, i)] = acc.clone();
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return domain("shape mismatch in subtraction");
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return domain("shape mismatch in addition");
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        if T::EXACT {
            (from..self.rows).find(|&i| !self[(i, col)].is_zero())
        } else {
            (from..self.rows)
                .filter(|&i| !self[(i, col)].is_zero())
                .max_by(|&a, &b| {
                    self[(a, col)]
                        .abs()
                        .partial_cmp(&self[(b, col)].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduce `[self | rhs]` to `[I | self⁻¹ rhs]` by Gauss–Jordan elimination.
    fn eliminate(&self, rhs: &mut Self) -> Result<()> {
        if !self.is_square() {
            return domain(format!("expected a square matrix, got {}x{}", self.rows, self.cols));
        }
        if rhs.rows != self.rows {
            return domain("right-hand side has the wrong number of rows");
        }
        let n = self.rows;
        let mut a = self.clone();
        for col in 0..n {
            let p = a.pivot_row(col, col).ok_or(Error::Singular { column: col })?;
            a.swap_rows(col, p);
            rhs.swap_rows(col, p);
            let inv = T::one() / a[(col, col)].clone();
            for j in col..n {
                let v = a[(col, j)].clone() * inv.clone();
                a[(col, j)] = v;
            }
            for j in 0..rhs.cols {
                let v = rhs[(col, j)].clone() * inv.clone();
                rhs[(col, j)] = v;
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in col..n {
                    if !a[(col, j)].is_zero() {
                        let d = f.clone() * a[(col, j)].clone();
                        a[(i, j)] -= &d;
                    }
                }
                for j in 0..rhs.cols {
                    if !rhs[(col, j)].is_zero() {
                        let d = f.clone() * rhs[(col, j)].clone();
                        rhs[(i, j)] -= &d;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn invert(&self) -> Result<Self> {
        let mut out = Self::identity(self.rows);
        self.eliminate(&mut out)?;
        Ok(out)
    }

    /// Solve `self · x = rhs` for a square system.
    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>> {
        if rhs.len() != self.rows {
            return domain(format!("rhs length {} for {} rows", rhs.len(), self.rows));
        }
        let mut b = Matrix {
            rows: rhs.len(),
            cols: 1,
            data: rhs.to_vec(),
        };
        self.eliminate(&mut b)?;
        Ok(b.data)
    }

    /// Solve a symmetric (Gram) system `M x = rhs`.
    pub fn solve_gram(&self, rhs: &[T]) -> Result<Vec<T>> {
        if !self.is_symmetric() {
            return domain("solve_gram expects a symmetric matrix");
        }
        self.solve(rhs)
    }

    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return domain("determinant of a non-square matrix");
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = a.pivot_row(col, col) else {
                return Ok(T::zero());
            };
            if p != col {
                a.swap_rows(col, p);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det = det * pivot.clone();
            for i in col + 1..n {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone() / pivot.clone();
                for j in col..n {
                    let d = f.clone() * a[(col, j)].clone();
                    a[(i, j)] -= &d;
                }
            }
        }
        Ok(det)
    }

    /// Max over rows of the absolute row sum (the ∞-operator norm).
    pub fn row_l1_max(&self) -> T {
        (0..self.rows)
            .map(|i| self.row(i).iter().fold(T::zero(), |acc, x| acc + x.abs()))
            .fold(T::zero(), |m, s| if s > m { s } else { m })
    }

    /// Max over columns of the absolute column sum (the 1-operator norm).
    pub fn column_l1_max(&self) -> T {
        self.transpose().row_l1_max()
    }

    /// Estimate `‖M‖₂` by power iteration on `MᵀM` in `f64`.
    ///
    /// Converges when successive estimates agree to relative `tolerance`.
    /// This is a diagnostic; the value is never fed back into exact code.
    pub fn spectral_norm_estimate(&self, tolerance: f64) -> Result<f64> {
        if self.rows == 0 || self.cols == 0 {
            return domain("spectral norm of an empty matrix");
        }
        if tolerance.is_nan() || tolerance <= 0.0 {
            return domain("tolerance must be positive");
        }
        spectral_norm_f64(&self.to_f64(), tolerance)
    }
}

const POWER_ITERATION_CAP: usize = 100_000;

fn spectral_norm_f64(m: &Matrix<f64>, tolerance: f64) -> Result<f64> {
    let apply = |v: &[f64]| -> Vec<f64> {
        let mv: Vec<f64> = (0..m.rows)
            .map(|i| m.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect();
        (0..m.cols)
            .map(|j| (0..m.rows).map(|i| m[(i, j)] * mv[i]).sum())
            .collect()
    };
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();

    // Irregular start so it is unlikely to be orthogonal to the top singular vector.
    let n = m.cols;
    let mut v: Vec<f64> = (0..n).map(|j| 1.0 + (j as f64 + 1.0).sqrt() / (n as f64 + 1.0)).collect();
    let len = norm(&v);
    v.iter_mut().for_each(|x| *x /= len);

    let mut estimate = 0.0f64;
    for _ in 0..POWER_ITERATION_CAP {
        let w = apply(&v);
        let len = norm(&w);
        if len == 0.0 {
            // v landed in the kernel of MᵀM; with our start this only happens for M = 0.
            return Ok(0.0);
        }
        // Rayleigh quotient of MᵀM at unit v is vᵀw.
        let rayleigh: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let next = rayleigh.max(0.0).sqrt();
        v = w.into_iter().map(|x| x / len).collect();
        if (next - estimate).abs() <= tolerance * next.max(f64::MIN_POSITIVE) {
            return Ok(next);
        }
        estimate = next;
    }
    Err(Error::NoConvergence {
        iterations: POWER_ITERATION_CAP,
    })
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row-major `"num/den"` dump: `{"rows", "cols", "entries"}`.
impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RatMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let entries: Vec<String> = self.data.iter().map(format_rational).collect();
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;
    use super::*;
    use crate::scalar::{int, ratio};
    use proptest::prelude::*;

    fn rat(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn invert_examples() {
        let i3 = RatMatrix::identity(3);
        assert_eq!(i3.invert().unwrap(), i3);

        let d = rat(&[&[2, 0], &[0, 4]]);
        let want = RatMatrix::diagonal(vec![ratio(1, 2), ratio(1, 4)]);
        assert_eq!(d.invert().unwrap(), want);

        // adjugate / det with det = 6
        let m = rat(&[&[3, 6], &[6, 14]]);
        let want = RatMatrix::from_rows(vec![vec![ratio(7, 3), int(-1)], vec![int(-1), ratio(1, 2)]]).unwrap();
        assert_eq!(m.invert().unwrap(), want);
    }

    #[test]
    fn singular_reports_column() {
        let m = rat(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.invert(), Err(Error::Singular { column: 1 }));
        let z = rat(&[&[0, 1], &[0, 3]]);
        assert_eq!(z.invert(), Err(Error::Singular { column: 0 }));
    }

    #[test]
    fn needs_row_exchange() {
        let m = rat(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.invert().unwrap(), m);
    }

    #[test]
    fn solve_gram_examples() {
        let i2 = RatMatrix::identity(2);
        assert_eq!(i2.solve_gram(&[int(5), int(7)]).unwrap(), vec![int(5), int(7)]);
        let m = rat(&[&[3, 6], &[6, 14]]);
        assert_eq!(m.solve_gram(&[int(1), int(0)]).unwrap(), vec![ratio(7, 3), int(-1)]);
        let m = rat(&[&[2, 0], &[0, 2]]);
        assert_eq!(m.solve_gram(&[int(1), int(1)]).unwrap(), vec![ratio(1, 2), ratio(1, 2)]);
        assert!(rat(&[&[1, 2], &[3, 4]]).solve_gram(&[int(1), int(1)]).is_err());
        assert!(rat(&[&[1, 2], &[2, 4]]).solve_gram(&[int(1), int(1)]).is_err());
    }

    #[test]
    fn row_l1_examples() {
        assert_eq!(RatMatrix::identity(3).row_l1_max(), int(1));
        assert_eq!(rat(&[&[1, -2], &[3, 0]]).row_l1_max(), int(3));
        let m = RatMatrix::from_rows(vec![vec![ratio(1, 2), ratio(1, 3)], vec![int(0), int(0)]]).unwrap();
        assert_eq!(m.row_l1_max(), ratio(5, 6));
    }

    #[test]
    fn spectral_examples() {
        let tol = 1e-12;
        let e = RatMatrix::identity(2).spectral_norm_estimate(tol).unwrap();
        assert!((e - 1.0).abs() < 1e-9);
        let d = RatMatrix::diagonal(vec![int(3), int(-5)]);
        assert!((d.spectral_norm_estimate(tol).unwrap() - 5.0).abs() < 1e-9);
        // singular values of [[0,1],[0,0]] are 1 and 0
        let n = rat(&[&[0, 1], &[0, 0]]);
        assert!((n.spectral_norm_estimate(tol).unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(RatMatrix::zeros(2, 2).spectral_norm_estimate(tol).unwrap(), 0.0);
        assert!(RatMatrix::zeros(0, 0).spectral_norm_estimate(tol).is_err());
        assert!(n.spectral_norm_estimate(0.0).is_err());
    }

    #[test]
    fn float_instantiation_uses_magnitude_pivots() {
        let m = Matrix::<f64>::from_rows(vec![vec![1e-20, 1.0], vec![1.0, 1.0]]).unwrap();
        let inv = m.invert().unwrap();
        let prod = inv.mul(&m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((prod[(i, j)] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn determinant_small() {
        assert_eq!(rat(&[&[3, 6], &[6, 14]]).determinant().unwrap(), int(6));
        assert_eq!(rat(&[&[0, 1], &[1, 0]]).determinant().unwrap(), int(-1));
        assert_eq!(rat(&[&[1, 2], &[2, 4]]).determinant().unwrap(), int(0));
    }

    #[test]
    fn json_dump() {
        let m = RatMatrix::from_rows(vec![vec![ratio(1, 2), int(0)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"entries":["1/2","0/1"]}"#);
    }

    fn int_matrix(max_n: usize) -> impl Strategy<Value = RatMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(-9i64..=9, n * n).prop_map(move |v| {
                RatMatrix::from_fn(n, n, |i, j| int(v[i * n + j]))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn inverse_times_matrix_is_identity(m in int_matrix(8)) {
            let det = m.determinant().unwrap();
            match m.invert() {
                Ok(inv) => {
                    prop_assert!(!det.is_zero());
                    prop_assert_eq!(inv.mul(&m).unwrap(), RatMatrix::identity(m.rows()));
                }
                Err(Error::Singular { .. }) => prop_assert!(det.is_zero()),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }

        #[test]
        fn spectral_below_holder_bound(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-20i64..=20, 36)) {
            let m = RatMatrix::from_fn(rows, cols, |i, j| ratio(seed[i * 6 + j], 1 + (i + j) as i64));
            let s = m.spectral_norm_estimate(1e-12).unwrap();
            let bound = (m.row_l1_max().to_f64() * m.column_l1_max().to_f64()).sqrt();
            prop_assert!(s <= bound * (1.0 + 1e-9) + 1e-12, "{s} > {bound}");
        }
    }
}
