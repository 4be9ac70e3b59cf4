//! K-minimality, dual uniqueness, and K-orthonormal bases.

use serde::Serialize;

use super::kframe::check_square;
use super::{bessel_from_operator, kdual_canonical, kdual_family, kdual_residual, FrameSystem};
use crate::error::{Error, Result};
use crate::linalg::{null_basis, pinv, rank, QMatrix, QVector};
use crate::quaternion::Quaternion;

/// `max_i ‖a_i − b_i‖`; `INFINITY` if the systems differ in shape.
pub fn max_vector_distance(a: &FrameSystem, b: &FrameSystem) -> f64 {
    if a.len() != b.len() || a.dim() != b.dim() {
        return f64::INFINITY;
    }
    a.vectors().iter().zip(b.vectors()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimalityReport {
    /// `T` injective, i.e. `rank(T) = m`.
    pub minimal: bool,
    pub rank: usize,
    pub len: usize,
    /// Largest distance between the canonical dual and probe members of
    /// the dual family.
    pub family_spread: f64,
    /// Two distinct K-duals, present when not minimal.
    pub witnesses: Option<(FrameSystem, FrameSystem)>,
    /// Duality residuals `‖K − T_F T_D*‖` of the witnesses.
    pub witness_residuals: Option<(f64, f64)>,
    pub witness_distance: Option<f64>,
}

fn probes(m: usize, n: usize) -> [QMatrix; 2] {
    let units = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    [
        QMatrix::from_fn(m, n, |_, _| Quaternion::ONE),
        QMatrix::from_fn(m, n, |r, c| units[(r + 2 * c) % 4].scale(1.0 + r as f64)),
    ]
}

pub fn k_minimal_check(frame: &FrameSystem, k: &QMatrix, tol: f64) -> Result<MinimalityReport> {
    let canonical = kdual_canonical(frame, k, tol)?;
    let t = frame.synthesis();
    let (m, n) = (frame.len(), frame.dim());
    let r = rank(t, None);
    let mut family_spread = 0.0_f64;
    for w in probes(m, n) {
        let d = kdual_family(frame, k, &w, tol)?;
        family_spread = family_spread.max(max_vector_distance(&d, &canonical));
    }
    let mut report = MinimalityReport {
        minimal: r == m,
        rank: r,
        len: m,
        family_spread,
        witnesses: None,
        witness_residuals: None,
        witness_distance: None,
    };
    if report.minimal {
        return Ok(report);
    }
    let x0 = null_basis(t, None).into_iter().next().expect("rank < m leaves a null vector");
    let (first, second) = mixed_duals(&(&pinv(t, None) * k), &x0)?;
    report.witness_residuals = Some((kdual_residual(frame, &first, k)?, kdual_residual(frame, &second, k)?));
    report.witness_distance = Some(max_vector_distance(&first, &second));
    report.witnesses = Some((first, second));
    Ok(report)
}

/// From a factor `X` of `K = TX` and a unit null vector `x0` of `T`, two
/// duals: `{X* e_i}` and the one obtained by rewriting `u_j = Σ_{i≠j} u_i α_i`.
fn mixed_duals(x_min: &QMatrix, x0: &QVector) -> Result<(FrameSystem, FrameSystem)> {
    let (m, n) = x_min.shape();
    let j = (0..m).max_by(|&a, &b| x0[a].norm_sqr().total_cmp(&x0[b].norm_sqr())).expect("nonempty");
    let pivot = x0[j];
    let row_norm = |x: &QMatrix| (0..n).map(|c| x[(j, c)].norm_sqr()).sum::<f64>().sqrt();

    // the pivot row of X must be nonzero or both duals coincide
    let mut x = x_min.clone();
    if row_norm(&x) < 1e-3 * x.op_norm().max(1.0) {
        let shift = 1.0 / pivot.abs();
        let candidates = [shift, 2.0 * shift].map(|s| {
            let mut y = x_min.clone();
            for r in 0..m {
                y[(r, 0)] += x0[r].scale(s);
            }
            y
        });
        x = candidates.into_iter().max_by(|a, b| row_norm(a).total_cmp(&row_norm(b))).expect("two candidates");
    }

    let pivot_inv = pivot.inv()?;
    let mut mixed = x.clone();
    for i in 0..m {
        for c in 0..n {
            mixed[(i, c)] = if i == j {
                Quaternion::ZERO
            } else {
                let alpha = -(x0[i] * pivot_inv);
                x[(i, c)] + alpha * x[(j, c)]
            };
        }
    }
    Ok((bessel_from_operator(&x)?, bessel_from_operator(&mixed)?))
}

/// Orthonormal system that is a Parseval K-frame: `T*T = I` and `KK* = S`.
pub fn k_orthonormal_check(frame: &FrameSystem, k: &QMatrix, tol: f64) -> Result<bool> {
    check_square(frame, k)?;
    let t = frame.synthesis();
    let gram_defect = (&t.adjoint() * t).max_abs_diff(&QMatrix::identity(frame.len()));
    let s = frame.frame_operator();
    let parseval_defect = (k * &k.adjoint()).try_sub(s)?.op_norm();
    Ok(gram_defect <= tol && parseval_defect <= tol * (1.0 + s.op_norm()))
}

/// The unique K-dual `{K* u_i}` of a K-orthonormal basis.
pub fn k_orthonormal_dual(frame: &FrameSystem, k: &QMatrix, tol: f64) -> Result<FrameSystem> {
    if !k_orthonormal_check(frame, k, tol)? {
        return Err(Error::NotKOrthonormal);
    }
    FrameSystem::from_synthesis(&(&k.adjoint() * frame.synthesis()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::kdual_verify;

    fn e(n: usize, k: usize) -> QVector {
        QVector::basis(n, k)
    }

    #[test]
    fn basis_is_minimal() {
        let f = FrameSystem::new(2, vec![e(2, 0), e(2, 1)]).unwrap();
        let r = k_minimal_check(&f, &QMatrix::identity(2), 1e-9).unwrap();
        assert!(r.minimal && r.witnesses.is_none());
        assert!(r.family_spread < 1e-12);
    }

    #[test]
    fn repeated_vector_has_two_duals() {
        let f = FrameSystem::new(2, vec![e(2, 0), e(2, 0), e(2, 1)]).unwrap();
        let k = QMatrix::identity(2);
        let r = k_minimal_check(&f, &k, 1e-9).unwrap();
        assert!(!r.minimal && r.rank == 2);
        let (a, b) = r.witnesses.unwrap();
        assert!(kdual_verify(&f, &a, &k, 1e-9).unwrap());
        assert!(kdual_verify(&f, &b, &k, 1e-9).unwrap());
        assert!(r.witness_distance.unwrap() > 0.1);
        assert!(r.family_spread > 0.1);
    }

    #[test]
    fn zero_vector_breaks_minimality() {
        let f = FrameSystem::new(2, vec![e(2, 0), e(2, 1), QVector::zeros(2)]).unwrap();
        assert!(!k_minimal_check(&f, &QMatrix::identity(2), 1e-9).unwrap().minimal);
    }

    #[test]
    fn quaternionic_null_vector_witnesses() {
        let u = QVector::new(vec![Quaternion::new(0.0, 1.0, 0.0, 0.0), Quaternion::new(0.5, 0.0, 0.0, 2.0)]);
        let v = QVector::new(vec![Quaternion::J, Quaternion::new(1.0, -1.0, 0.0, 0.0)]);
        let mut w = u.right_mul(Quaternion::new(0.3, 0.0, -1.0, 0.7));
        w.axpy(&v, Quaternion::new(-0.2, 1.5, 0.0, 0.4));
        let f = FrameSystem::new(2, vec![u, v, w]).unwrap();
        let k = QMatrix::from_fn(2, 2, |r, c| Quaternion::new(1.0, r as f64, c as f64, 0.5));
        let r = k_minimal_check(&f, &k, 1e-9).unwrap();
        let (a, b) = r.witnesses.unwrap();
        assert!(kdual_verify(&f, &a, &k, 1e-9).unwrap());
        assert!(kdual_verify(&f, &b, &k, 1e-9).unwrap());
        assert!(r.witness_distance.unwrap() > 1e-3);
    }

    #[test]
    fn zero_operator_still_has_distinct_duals() {
        let f = FrameSystem::new(1, vec![e(1, 0), e(1, 0)]).unwrap();
        let k = QMatrix::zeros(1, 1);
        let r = k_minimal_check(&f, &k, 1e-9).unwrap();
        let (a, b) = r.witnesses.unwrap();
        assert!(kdual_verify(&f, &a, &k, 1e-9).unwrap() && kdual_verify(&f, &b, &k, 1e-9).unwrap());
        assert!(r.witness_distance.unwrap() > 0.5);
    }

    #[test]
    fn orthonormal_bases() {
        let f = FrameSystem::new(2, vec![e(2, 0), e(2, 1)]).unwrap();
        let id = QMatrix::identity(2);
        assert!(k_orthonormal_check(&f, &id, 1e-9).unwrap());
        assert!(k_orthonormal_dual(&f, &id, 1e-9).unwrap().max_abs_diff(&f) < 1e-15);

        let g = FrameSystem::new(2, vec![e(2, 0)]).unwrap();
        let p = QMatrix::diag(&[1.0, 0.0]);
        assert!(k_orthonormal_check(&g, &p, 1e-9).unwrap());
        let d = k_orthonormal_dual(&g, &p, 1e-9).unwrap();
        assert!(d.max_abs_diff(&g) < 1e-15);
        assert!(kdual_verify(&g, &d, &p, 1e-9).unwrap());
        assert!(k_minimal_check(&g, &p, 1e-9).unwrap().minimal);

        let h = FrameSystem::new(2, vec![e(2, 0), e(2, 0)]).unwrap();
        assert!(!k_orthonormal_check(&h, &p, 1e-9).unwrap());
        assert_eq!(k_orthonormal_dual(&h, &p, 1e-9), Err(Error::NotKOrthonormal));
    }
}
