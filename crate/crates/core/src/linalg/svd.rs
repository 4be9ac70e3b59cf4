//! Singular value decomposition, pseudoinverse, rank and the four
//! fundamental subspaces.
//!
//! Singular values come from the Hermitian dilation `[[0, Q], [Q*, 0]]`,
//! whose spectrum is `±σ_i` padded with zeros. Unlike `eig(Q*Q)`, zero
//! singular values are resolved to `O(ε·σ_max)` rather than `O(√ε·σ_max)`,
//! which keeps null-space residuals at round-off level.

use super::eigen::{hermitian_eig, hermitian_eigenvalues};
use super::matrix::QMatrix;
use super::subspace::complete_basis;
use super::vector::QVector;

#[derive(Clone, Debug)]
pub struct Svd {
    pub rows: usize,
    pub cols: usize,
    /// `min(m, n)` singular values, descending.
    pub values: Vec<f64>,
    /// Orthonormal basis of ℍᵐ; the first `values.len()` pair with `values`.
    pub left: Vec<QVector>,
    /// Orthonormal basis of ℍⁿ; the first `values.len()` pair with `values`.
    pub right: Vec<QVector>,
    /// Number of leading pairs taken directly from the dilation; the rest of
    /// each basis is an orthonormal completion.
    pub resolved: usize,
}

impl Svd {
    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.values.iter().take_while(|&&s| s > tol).count()
    }

    /// Rank at `tol` (default [`default_rank_tol`]), capped by the number of
    /// resolved pairs.
    pub fn effective_rank(&self, tol: Option<f64>) -> usize {
        let tol = tol.unwrap_or_else(|| default_rank_tol(self.rows, self.cols, self.max()));
        self.rank(tol).min(self.resolved)
    }

    pub fn pinv(&self, tol: Option<f64>) -> QMatrix {
        let (m, n) = (self.rows, self.cols);
        let mut out = QMatrix::zeros(n, m);
        for k in 0..self.effective_rank(tol) {
            let inv = 1.0 / self.values[k];
            for r in 0..n {
                let vr = self.right[k][r].scale(inv);
                for c in 0..m {
                    out[(r, c)] += vr * self.left[k][c].conj();
                }
            }
        }
        out
    }

    pub fn null_basis(&self, tol: Option<f64>) -> Vec<QVector> {
        self.right[self.effective_rank(tol)..].to_vec()
    }

    pub fn range_basis(&self, tol: Option<f64>) -> Vec<QVector> {
        self.left[..self.effective_rank(tol)].to_vec()
    }

    pub fn reconstruct(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows, self.cols);
        for (k, &s) in self.values.iter().enumerate() {
            for r in 0..self.rows {
                let us = self.left[k][r].scale(s);
                for c in 0..self.cols {
                    out[(r, c)] += us * self.right[k][c].conj();
                }
            }
        }
        out
    }
}

/// `σ_max · max(m, n) · 1e-12`
pub fn default_rank_tol(rows: usize, cols: usize, sigma_max: f64) -> f64 {
    sigma_max * rows.max(cols) as f64 * 1e-12
}

pub fn svd(q: &QMatrix) -> Svd {
    svd_with_cutoff(q, None)
}

/// SVD whose singular vectors are resolved for every `σ > cutoff`
/// (default cutoff: [`default_rank_tol`]).
pub fn svd_with_cutoff(q: &QMatrix, cutoff: Option<f64>) -> Svd {
    let (m, n) = q.shape();
    let p = m.min(n);
    if p == 0 {
        return Svd {
            rows: m,
            cols: n,
            values: Vec::new(),
            left: complete_basis(&[], m),
            right: complete_basis(&[], n),
            resolved: 0,
        };
    }

    let dilation = QMatrix::zeros(m, m)
        .hstack(q)
        .and_then(|top| top.vstack(&q.adjoint().hstack(&QMatrix::zeros(n, n))?))
        .expect("dilation blocks are conformant");
    let eig = hermitian_eig(&dilation).expect("dilation is Hermitian by construction");

    let top: Vec<usize> = (0..m + n).rev().take(p).collect();
    let values: Vec<f64> = top.iter().map(|&k| eig.values[k].max(0.0)).collect();
    let sigma_max = values[0];
    let cutoff = cutoff.unwrap_or_else(|| default_rank_tol(m, n, sigma_max));

    let mut left = Vec::with_capacity(m);
    let mut right = Vec::with_capacity(n);
    for (&k, &s) in top.iter().zip(&values) {
        if s <= cutoff {
            break;
        }
        let w = &eig.vectors[k];
        match (w.slice(0, m).normalized(), w.slice(m, m + n).normalized()) {
            (Some(u), Some(v)) => {
                left.push(u);
                right.push(v);
            }
            _ => break,
        }
    }
    let resolved = left.len();
    let left = complete_basis(&left, m);
    let right = complete_basis(&right, n);
    Svd { rows: m, cols: n, values, left, right, resolved }
}

/// Moore–Penrose pseudoinverse, truncating `σ ≤ tol`
/// (default tol: [`default_rank_tol`]).
pub fn pinv(q: &QMatrix, tol: Option<f64>) -> QMatrix {
    svd_with_cutoff(q, tol).pinv(tol)
}

pub fn rank(q: &QMatrix, tol: Option<f64>) -> usize {
    svd_with_cutoff(q, tol).effective_rank(tol)
}

/// Orthonormal basis of `N(Q)`; `dim N(Q) + rank(Q) = n`.
pub fn null_basis(q: &QMatrix, tol: Option<f64>) -> Vec<QVector> {
    svd_with_cutoff(q, tol).null_basis(tol)
}

/// Orthonormal basis of `R(Q)`.
pub fn range_basis(q: &QMatrix, tol: Option<f64>) -> Vec<QVector> {
    svd_with_cutoff(q, tol).range_basis(tol)
}

impl QMatrix {
    /// Operator norm `sup_{‖u‖=1} ‖Lu‖`, from the smaller Gram matrix.
    pub fn op_norm(&self) -> f64 {
        let (m, n) = self.shape();
        if m == 0 || n == 0 {
            return 0.0;
        }
        let gram = if m <= n { self * &self.adjoint() } else { &self.adjoint() * self };
        hermitian_eigenvalues(&gram).map(|v| v.last().copied().unwrap_or(0.0).max(0.0).sqrt()).unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion;

    fn rank_two_3x4() -> QMatrix {
        let a = QMatrix::from_fn(3, 2, |r, c| Quaternion::new(1.0 + r as f64, c as f64, -0.5 * r as f64, 0.25));
        let b = QMatrix::from_fn(2, 4, |r, c| Quaternion::new(c as f64 - r as f64, 1.0, 0.5 * c as f64, r as f64));
        &a * &b
    }

    #[test]
    fn zero_matrix() {
        let s = svd(&QMatrix::zeros(2, 3));
        assert_eq!(s.values, vec![0.0, 0.0]);
        assert_eq!(s.left.len(), 2);
        assert_eq!(s.right.len(), 3);
        assert_eq!(null_basis(&QMatrix::zeros(2, 2), None).len(), 2);
        assert_eq!(rank(&QMatrix::zeros(2, 2), None), 0);
    }

    #[test]
    fn diagonal_values_descend() {
        let s = svd(&QMatrix::diag(&[3.0, 4.0]));
        assert!((s.values[0] - 4.0).abs() < 1e-14);
        assert!((s.values[1] - 3.0).abs() < 1e-14);
        assert_eq!(rank(&QMatrix::identity(3), None), 3);
    }

    #[test]
    fn pinv_of_simple_matrices() {
        assert!(pinv(&QMatrix::identity(3), None).max_abs_diff(&QMatrix::identity(3)) < 1e-14);
        let p = pinv(&QMatrix::diag(&[2.0, 0.0]), None);
        assert!(p.max_abs_diff(&QMatrix::diag(&[0.5, 0.0])) < 1e-14);
    }

    #[test]
    fn rank_deficient_subspaces() {
        let q = rank_two_3x4();
        let s = svd(&q);
        assert!(s.values[2] < 1e-13 * s.values[0]);
        assert_eq!(rank(&q, None), 2);
        let nb = null_basis(&q, None);
        assert_eq!(nb.len(), 2);
        for v in &nb {
            assert!((&q * v).norm() <= 1e-12 * s.max());
        }
        assert_eq!(range_basis(&q, None).len(), 2);
        assert!(s.reconstruct().max_abs_diff(&q) < 1e-12 * s.max());
        let p = pinv(&q, None);
        assert!((&(&q * &p) * &q).max_abs_diff(&q) < 1e-11 * s.max());
    }

    #[test]
    fn operator_norm_matches_top_singular_value() {
        let q = rank_two_3x4();
        assert!((q.op_norm() - svd(&q).max()).abs() < 1e-10 * q.op_norm());
        assert_eq!(QMatrix::zeros(3, 0).op_norm(), 0.0);
    }
}
