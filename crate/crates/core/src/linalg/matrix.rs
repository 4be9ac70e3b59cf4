use std::ops::{Add, Index, IndexMut, Mul, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{dim_mismatch, Error, Result};
use crate::quaternion::Quaternion;

use super::vector::QVector;

/// A right ℍ-linear operator ℍⁿ → ℍᵐ stored as an `m × n` row-major array.
///
/// The action is `(Lv)_r = Σ_c L[r,c] v_c`: entries multiply the vector's
/// coefficients from the left, so `L(v q) = (L v) q` for scalars `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Quaternion::ONE;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(dim_mismatch("matrix data length", rows * cols, data.len()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |r, c| if r == c { Quaternion::real(values[r]) } else { Quaternion::ZERO })
    }

    /// Matrix whose `c`-th column is `columns[c]`; every column must have `rows` entries.
    pub fn from_columns(rows: usize, columns: &[QVector]) -> Result<Self> {
        for col in columns {
            if col.len() != rows {
                return Err(dim_mismatch("column length", rows, col.len()));
            }
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| columns[c][r]))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn column(&self, c: usize) -> QVector {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn columns(&self) -> Vec<QVector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> QVector {
        QVector::new(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    /// `(L*)[r,c] = conj(L[c,r])`
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn matmul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(dim_mismatch("inner matrix dimension", self.cols, other.rows));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let lhs = &self.data[r * self.cols..(r + 1) * self.cols];
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for (k, &a) in lhs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let rhs = &other.data[k * other.cols..(k + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(rhs) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &QVector) -> Result<QVector> {
        if self.cols != v.len() {
            return Err(dim_mismatch("vector length", self.cols, v.len()));
        }
        Ok((0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].iter().zip(v.as_slice()).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    pub fn try_add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn check_same_shape(&self, other: &QMatrix) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!("matrix shapes {:?} and {:?}", self.shape(), other.shape())));
        }
        Ok(())
    }

    fn zip_with(&self, other: &QMatrix, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, r: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|q| q.scale(r)).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.abs()).fold(0.0, f64::max)
    }

    /// Largest componentwise difference; `INFINITY` for mismatched shapes.
    pub fn max_abs_diff(&self, other: &QMatrix) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| a.max_abs_diff(*b)).fold(0.0, f64::max)
    }

    /// `‖L − L*‖_F`, or `None` if the matrix is not square.
    pub fn hermitian_defect(&self) -> Option<f64> {
        self.is_square().then(|| (self - &self.adjoint()).frobenius_norm())
    }

    /// `(L + L*) / 2`
    pub fn hermitian_part(&self) -> QMatrix {
        (self + &self.adjoint()).scale(0.5)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> QMatrix {
        let (r0, c0) = (rows.start, cols.start);
        QMatrix::from_fn(rows.len(), cols.len(), |r, c| self[(r0 + r, c0 + c)])
    }

    /// `[self other]`
    pub fn hstack(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows {
            return Err(dim_mismatch("row count for horizontal stacking", self.rows, other.rows));
        }
        let n = self.cols;
        Ok(QMatrix::from_fn(self.rows, n + other.cols, |r, c| if c < n { self[(r, c)] } else { other[(r, c - n)] }))
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.cols {
            return Err(dim_mismatch("column count for vertical stacking", self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(QMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// `diag(self, other)`
    pub fn block_diag(&self, other: &QMatrix) -> QMatrix {
        let (m1, n1) = self.shape();
        QMatrix::from_fn(m1 + other.rows, n1 + other.cols, |r, c| match (r < m1, c < n1) {
            (true, true) => self[(r, c)],
            (false, false) => other[(r - m1, c - n1)],
            _ => Quaternion::ZERO,
        })
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

// Operator forms panic on shape mismatch; the fallible methods are the
// public entry points for unchecked input.
impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, o: &QMatrix) -> QMatrix {
        self.matmul(o).expect("matrix product shape mismatch")
    }
}

impl Mul<&QVector> for &QMatrix {
    type Output = QVector;
    fn mul(self, v: &QVector) -> QVector {
        self.matvec(v).expect("matrix-vector shape mismatch")
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, o: &QMatrix) -> QMatrix {
        self.try_add(o).expect("matrix sum shape mismatch")
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, o: &QMatrix) -> QMatrix {
        self.try_sub(o).expect("matrix difference shape mismatch")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr { rows: self.rows, cols: self.cols, data: self.data.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        QMatrix::from_row_major(repr.rows, repr.cols, repr.data).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a0: f64, a1: f64, a2: f64, a3: f64) -> Quaternion {
        Quaternion::new(a0, a1, a2, a3)
    }

    fn sample() -> QMatrix {
        QMatrix::from_row_major(
            2,
            3,
            vec![
                q(1.0, 2.0, 0.0, -1.0),
                q(0.0, 0.5, 1.0, 0.0),
                q(3.0, 0.0, 0.0, 1.0),
                q(-1.0, 0.0, 2.0, 0.0),
                q(0.0, 0.0, 0.0, 1.0),
                q(0.25, -1.0, 1.0, 1.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let v = QVector::new(vec![q(1.0, 2.0, 3.0, 4.0), q(-1.0, 0.0, 0.5, 0.0)]);
        assert_eq!(QMatrix::identity(2).matvec(&v).unwrap(), v);
        assert_eq!(QMatrix::identity(3).adjoint(), QMatrix::identity(3));
    }

    #[test]
    fn adjoint_of_scalar_and_involution() {
        let i = QMatrix::from_row_major(1, 1, vec![Quaternion::I]).unwrap();
        assert_eq!(i.adjoint()[(0, 0)], -Quaternion::I);
        let a = sample();
        assert_eq!(a.adjoint().adjoint(), a);
        assert_eq!(a.adjoint().shape(), (3, 2));
    }

    #[test]
    fn right_linearity() {
        let a = sample();
        let v = QVector::new(vec![q(0.3, -1.0, 0.0, 2.0), q(1.0, 1.0, 1.0, 1.0), q(0.0, 0.0, -2.0, 0.5)]);
        let s = q(0.5, -0.25, 1.5, 0.75);
        let lhs = a.matvec(&v.right_mul(s)).unwrap();
        let rhs = a.matvec(&v).unwrap().right_mul(s);
        assert!(lhs.max_abs_diff(&rhs) < 1e-13);
    }

    #[test]
    fn shape_errors() {
        let a = sample();
        assert!(a.matmul(&a).is_err());
        assert!(a.matvec(&QVector::zeros(2)).is_err());
        assert!(QMatrix::from_row_major(2, 2, vec![Quaternion::ONE]).is_err());
        assert!(a.hstack(&QMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn stacking_and_blocks() {
        let a = sample();
        let b = QMatrix::identity(2);
        let d = a.block_diag(&b);
        assert_eq!(d.shape(), (4, 5));
        assert_eq!(d.submatrix(0..2, 0..3), a);
        assert_eq!(d.submatrix(2..4, 3..5), b);
        assert_eq!(d.submatrix(0..2, 3..5), QMatrix::zeros(2, 2));
        let v = a.vstack(&a).unwrap();
        assert_eq!(v.submatrix(2..4, 0..3), a);
    }

    #[test]
    fn json_layout() {
        let m = QMatrix::identity(1);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":1,"data":[[1.0,0.0,0.0,0.0]]}"#);
        let bad = r#"{"rows":2,"cols":1,"data":[[1,0,0,0]]}"#;
        assert!(serde_json::from_str::<QMatrix>(bad).is_err());
    }
}
