//! Orthonormal bases, complements, subspace comparisons and the Loewner order.

use crate::error::{dim_mismatch, Result};

use super::eigen::hermitian_eigenvalues;
use super::matrix::QMatrix;
use super::vector::{inner_unchecked, QVector};

const DROP_TOL: f64 = 1e-10;

/// Orthonormalizes `vs` in order, dropping any vector whose residual norm
/// is at most `1e-10 · (1 + ‖v‖)`. Coefficients act on the right:
/// `r = v − Σ z_j ⟨z_j, v⟩`.
pub fn gram_schmidt(vs: &[QVector]) -> Vec<QVector> {
    let mut out: Vec<QVector> = Vec::new();
    for v in vs {
        let mut r = v.clone();
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for z in &out {
                let coef = inner_unchecked(z.as_slice(), r.as_slice());
                r.axpy(z, -coef);
            }
        }
        let norm = r.norm();
        if norm > DROP_TOL * (1.0 + v.norm()) {
            out.push(r.scale(1.0 / norm));
        }
    }
    out
}

/// Extends an orthonormal set to an orthonormal basis of ℍⁿ, choosing at
/// each step the standard basis vector with the largest component outside
/// the current span.
pub(crate) fn complete_basis(orthonormal: &[QVector], n: usize) -> Vec<QVector> {
    let mut basis = orthonormal.to_vec();
    let mut candidates: Vec<QVector> = (0..n).map(|k| QVector::basis(n, k)).collect();
    for z in &basis {
        for c in candidates.iter_mut() {
            let coef = inner_unchecked(z.as_slice(), c.as_slice());
            c.axpy(z, -coef);
        }
    }
    while basis.len() < n && !candidates.is_empty() {
        let (pos, _) = candidates
            .iter()
            .enumerate()
            .map(|(k, c)| (k, c.norm_sqr()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty");
        let mut z = candidates.swap_remove(pos);
        for b in &basis {
            let coef = inner_unchecked(b.as_slice(), z.as_slice());
            z.axpy(b, -coef);
        }
        let Some(z) = z.normalized() else { break };
        for c in candidates.iter_mut() {
            let coef = inner_unchecked(z.as_slice(), c.as_slice());
            c.axpy(&z, -coef);
        }
        basis.push(z);
    }
    basis
}

/// Orthonormal basis of `A^⊥` in ℍⁿ.
pub fn orth_complement(vs: &[QVector], n: usize) -> Result<Vec<QVector>> {
    if let Some(v) = vs.iter().find(|v| v.len() != n) {
        return Err(dim_mismatch("vector length", n, v.len()));
    }
    let z = gram_schmidt(vs);
    let k = z.len();
    Ok(complete_basis(&z, n).split_off(k))
}

/// `‖(I − ZZ*) A‖_F` for orthonormal `Z`: how far `R(A)` sticks out of `span Z`.
pub fn inclusion_residual(a: &QMatrix, basis: &[QVector]) -> f64 {
    let mut total = 0.0;
    for col in a.columns() {
        let mut r = col;
        for z in basis {
            let coef = inner_unchecked(z.as_slice(), r.as_slice());
            r.axpy(z, -coef);
        }
        total += r.norm_sqr();
    }
    total.sqrt()
}

fn basis_matrix(n: usize, basis: &[QVector]) -> QMatrix {
    QMatrix::from_columns(n, basis).expect("basis vectors share the ambient dimension")
}

/// Outcome of comparing two subspaces given by orthonormal bases.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceTest {
    pub dim_a: usize,
    pub dim_b: usize,
    /// `‖(I − P_B) Z_A‖_F`
    pub a_in_b: f64,
    /// `‖(I − P_A) Z_B‖_F`
    pub b_in_a: f64,
    pub equal: bool,
}

/// Mutual projection test between `span a` and `span b` (both orthonormal,
/// ambient dimension `n`).
pub fn subspace_equal(n: usize, a: &[QVector], b: &[QVector], tol: f64) -> SubspaceTest {
    let a_in_b = inclusion_residual(&basis_matrix(n, a), b);
    let b_in_a = inclusion_residual(&basis_matrix(n, b), a);
    SubspaceTest {
        dim_a: a.len(),
        dim_b: b.len(),
        a_in_b,
        b_in_a,
        equal: a.len() == b.len() && a_in_b <= tol && b_in_a <= tol,
    }
}

/// Largest of the two mutual projection residuals.
pub fn span_distance(n: usize, a: &[QVector], b: &[QVector]) -> f64 {
    let t = subspace_equal(n, a, b, 0.0);
    t.a_in_b.max(t.b_in_a)
}

/// Loewner order test `H1 ≤ H2`: true iff `λ_min(H2 − H1) ≥ −slack`.
pub fn psd_geq(h1: &QMatrix, h2: &QMatrix, slack: f64) -> Result<bool> {
    let diff = h2.try_sub(h1)?;
    let vals = hermitian_eigenvalues(&diff)?;
    Ok(vals.first().is_none_or(|&l| l >= -slack))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::linalg::inner;
    use crate::quaternion::Quaternion;

    #[test]
    fn orthonormal_input_is_kept() {
        let e = [QVector::basis(2, 0), QVector::basis(2, 1)];
        assert_eq!(gram_schmidt(&e), e.to_vec());
    }

    #[test]
    fn duplicates_are_dropped() {
        let e1 = QVector::basis(2, 0);
        assert_eq!(gram_schmidt(&[e1.clone(), e1.clone()]), vec![e1]);
        assert!(gram_schmidt(&[QVector::zeros(3)]).is_empty());
    }

    #[test]
    fn quaternionic_multiples_are_dependent() {
        // v and v·q span the same right submodule
        let v = QVector::new(vec![Quaternion::new(1.0, 2.0, 0.0, -1.0), Quaternion::J]);
        let vq = v.right_mul(Quaternion::new(0.0, 0.3, -2.0, 1.0));
        assert_eq!(gram_schmidt(&[v, vq]).len(), 1);
    }

    #[test]
    fn complement_examples() {
        let c = orth_complement(&[QVector::basis(2, 0)], 2).unwrap();
        assert_eq!(c.len(), 1);
        assert!(inner(&c[0], &QVector::basis(2, 0)).unwrap().abs() < 1e-15);
        assert!((inner(&c[0], &QVector::basis(2, 1)).unwrap().abs() - 1.0).abs() < 1e-15);
        let full = orth_complement(&[], 3).unwrap();
        assert_eq!(full.len(), 3);
        assert!(matches!(orth_complement(&[QVector::zeros(2)], 3), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn loewner_order_examples() {
        let i = QMatrix::identity(2);
        assert!(psd_geq(&QMatrix::zeros(2, 2), &i, 0.0).unwrap());
        assert!(!psd_geq(&i.scale(2.0), &i, 1e-9).unwrap());
        assert!(psd_geq(&i, &i, 0.0).unwrap());
        let skew = QMatrix::from_row_major(1, 1, vec![Quaternion::I]).unwrap();
        assert!(matches!(psd_geq(&skew, &QMatrix::zeros(1, 1), 0.0), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn subspace_comparison() {
        let a = vec![QVector::basis(3, 0), QVector::basis(3, 1)];
        let b = gram_schmidt(&[QVector::from_reals(&[1.0, 1.0, 0.0]), QVector::from_reals(&[1.0, -1.0, 0.0])]);
        assert!(subspace_equal(3, &a, &b, 1e-12).equal);
        assert!(!subspace_equal(3, &a, &[QVector::basis(3, 2)], 1e-12).equal);
        assert!(span_distance(3, &a, &b) < 1e-14);
    }
}
