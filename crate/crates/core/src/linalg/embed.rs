//! Complex adjoint embedding χ: ℍ^{m×n} → ℂ^{2m×2n}.
//!
//! Each quaternion is written `q = a + j·b` with `a, b ∈ span{1, i}`. Using
//! `z·j = j·conj(z)` for complex `z`, a matrix `Q = A + j·B` acts on
//! `u = x + j·y` as `Qu = (Ax − conj(B)y) + j·(Bx + conj(A)y)`, hence
//! `χ(Q) = [[A, −conj(B)], [B, conj(A)]]`. Right multiplication by complex
//! scalars is complex-linear in the stacked coordinates `(x; y)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

use super::matrix::QMatrix;
use super::vector::QVector;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, z: Complex64) {
        self.data[r * self.cols + c] = z;
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "complex matrix product shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `q = a + j·b` ↦ `(a, b)`
#[inline]
pub(crate) fn split(q: Quaternion) -> (Complex64, Complex64) {
    // j(b0 + b1 i) = b0 j − b1 k
    (Complex64::new(q.a0, q.a1), Complex64::new(q.a2, -q.a3))
}

#[inline]
pub(crate) fn join(a: Complex64, b: Complex64) -> Quaternion {
    Quaternion::new(a.re, a.im, b.re, -b.im)
}

pub fn embed(q: &QMatrix) -> ComplexMatrix {
    let (m, n) = q.shape();
    let mut out = ComplexMatrix::zeros(2 * m, 2 * n);
    for r in 0..m {
        for c in 0..n {
            let (a, b) = split(q[(r, c)]);
            out.set(r, c, a);
            out.set(r, c + n, -b.conj());
            out.set(r + m, c, b);
            out.set(r + m, c + n, a.conj());
        }
    }
    out
}

/// Inverse of [`embed`]; rejects matrices whose blocks deviate from the
/// embedded pattern by more than `1e-10 · (1 + max|C|)`.
pub fn unembed(c: &ComplexMatrix) -> Result<QMatrix> {
    if !c.rows.is_multiple_of(2) || !c.cols.is_multiple_of(2) {
        return Err(Error::NotEmbeddable { residual: f64::INFINITY });
    }
    let (m, n) = (c.rows / 2, c.cols / 2);
    let mut residual: f64 = 0.0;
    let out = QMatrix::from_fn(m, n, |r, k| {
        let a = c.get(r, k);
        let b = c.get(r + m, k);
        residual = residual.max((c.get(r, k + n) + b.conj()).norm()).max((c.get(r + m, k + n) - a.conj()).norm());
        join(a, b)
    });
    if residual > 1e-10 * (1.0 + c.max_abs()) {
        return Err(Error::NotEmbeddable { residual });
    }
    Ok(out)
}

/// `u = x + j·y` ↦ `(x; y)`
pub fn embed_vector(u: &QVector) -> Vec<Complex64> {
    let n = u.len();
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
    for (k, &q) in u.iter().enumerate() {
        let (a, b) = split(q);
        out[k] = a;
        out[k + n] = b;
    }
    out
}

/// Inverse of [`embed_vector`].
pub fn unembed_vector(w: &[Complex64]) -> QVector {
    let n = w.len() / 2;
    (0..n).map(|k| join(w[k], w[k + n])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn embeds_identity_and_j() {
        let one = embed(&QMatrix::identity(1));
        assert_eq!(one.data, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let j = embed(&QMatrix::from_row_major(1, 1, vec![Quaternion::J]).unwrap());
        assert_eq!(j.data, vec![c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn unit_products_match() {
        let units = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
        for &p in &units {
            for &q in &units {
                let mp = QMatrix::from_row_major(1, 1, vec![p]).unwrap();
                let mq = QMatrix::from_row_major(1, 1, vec![q]).unwrap();
                let mpq = QMatrix::from_row_major(1, 1, vec![p * q]).unwrap();
                assert_eq!(embed(&mp).matmul(&embed(&mq)), embed(&mpq));
            }
        }
    }

    #[test]
    fn round_trip_and_rejection() {
        let q = QMatrix::from_fn(2, 3, |r, k| Quaternion::new(r as f64, k as f64, 1.0 - r as f64, 0.5));
        assert_eq!(unembed(&embed(&q)).unwrap(), q);
        let mut bad = embed(&q);
        bad.set(0, 0, c(42.0, 0.0));
        assert!(matches!(unembed(&bad), Err(Error::NotEmbeddable { .. })));
        assert!(unembed(&ComplexMatrix::zeros(3, 2)).is_err());
    }

    #[test]
    fn vector_round_trip() {
        let u = QVector::new(vec![Quaternion::new(1.0, 2.0, 3.0, 4.0), Quaternion::K]);
        assert_eq!(unembed_vector(&embed_vector(&u)), u);
    }
}
