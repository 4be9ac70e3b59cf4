//! Duals of super frames versus duals of their components.

use serde::{Deserialize, Serialize};

use super::conditions::cross_scale;
use super::{oplus_op, SuperFrame};
use crate::error::{Error, Result};
use crate::frames::{kdual_residual, kdual_verify, FrameSystem};
use crate::linalg::QMatrix;

/// Splits a verified `K1⊕K2`-dual `{a_i ⊕ b_i}` of `{u_i ⊕ v_i}` and
/// checks each component pairing.
pub fn super_dual_split(
    sf: &SuperFrame,
    sd: &SuperFrame,
    k1: &QMatrix,
    k2: &QMatrix,
    tol: f64,
) -> Result<(bool, bool)> {
    let k = oplus_op(k1, k2);
    if !kdual_verify(sf.combined(), sd.combined(), &k, tol)? {
        return Err(Error::NotADual { residual: kdual_residual(sf.combined(), sd.combined(), &k)? });
    }
    Ok((kdual_verify(sf.left(), sd.left(), k1, tol)?, kdual_verify(sf.right(), sd.right(), k2, tol)?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualCombineReport {
    /// Both cross terms vanish.
    pub equivalent: bool,
    /// `(‖T2·θ_{DU}‖, ‖T1·θ_{DV}‖)`
    pub cross_residuals: (f64, f64),
    pub scale: f64,
    /// `{a_i ⊕ b_i}` is a `K1⊕K2`-dual of `{u_i ⊕ v_i}`.
    pub combined_dual: bool,
    pub combined_residual: f64,
    pub agree: bool,
}

fn require_dual(frame: &FrameSystem, dual: &FrameSystem, k: &QMatrix, tol: f64) -> Result<()> {
    if kdual_verify(frame, dual, k, tol)? {
        Ok(())
    } else {
        Err(Error::NotADual { residual: kdual_residual(frame, dual, k)? })
    }
}

/// Given component duals, decides whether they combine into a dual of the
/// combined system and compares with the direct check.
pub fn super_dual_combine(
    fu: &FrameSystem,
    du: &FrameSystem,
    k1: &QMatrix,
    fv: &FrameSystem,
    dv: &FrameSystem,
    k2: &QMatrix,
    tol: f64,
) -> Result<DualCombineReport> {
    require_dual(fu, du, k1, tol)?;
    require_dual(fv, dv, k2, tol)?;
    let (t1, t2) = (fu.synthesis(), fv.synthesis());
    let (th1, th2) = (du.analysis(), dv.analysis());
    let cross = ((t2 * &th1).op_norm(), (t1 * &th2).op_norm());
    let scale = cross_scale(t1, &th1, t2, &th2);
    let equivalent = cross.0 <= tol * scale && cross.1 <= tol * scale;
    let sf = SuperFrame::new(fu.clone(), fv.clone())?;
    let sd = SuperFrame::new(du.clone(), dv.clone())?;
    let k = oplus_op(k1, k2);
    let combined_residual = kdual_residual(sf.combined(), sd.combined(), &k)?;
    let combined_dual = kdual_verify(sf.combined(), sd.combined(), &k, tol)?;
    Ok(DualCombineReport {
        equivalent,
        cross_residuals: cross,
        scale,
        combined_dual,
        combined_residual,
        agree: equivalent == combined_dual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::kdual_canonical;
    use crate::linalg::QVector;
    use crate::quaternion::Quaternion;

    fn e(n: usize, k: usize) -> QVector {
        QVector::basis(n, k)
    }

    fn frame(n: usize, vs: Vec<QVector>) -> FrameSystem {
        FrameSystem::new(n, vs).unwrap()
    }

    #[test]
    fn disjoint_supports_combine() {
        let z = QVector::zeros(2);
        let fu = frame(2, vec![e(2, 0), e(2, 1), z.clone(), z.clone()]);
        let fv = frame(2, vec![z.clone(), z, e(2, 0), e(2, 1)]);
        let k1 = QMatrix::from_fn(2, 2, |r, c| Quaternion::new(1.0, r as f64, 0.0, c as f64));
        let k2 = QMatrix::from_fn(2, 2, |r, c| Quaternion::new(0.0, 1.0, (r + c) as f64, 0.0));
        let du = kdual_canonical(&fu, &k1, 1e-9).unwrap();
        let dv = kdual_canonical(&fv, &k2, 1e-9).unwrap();
        let r = super_dual_combine(&fu, &du, &k1, &fv, &dv, &k2, 1e-9).unwrap();
        assert!(r.equivalent && r.combined_dual && r.agree);

        let sf = SuperFrame::new(fu, fv).unwrap();
        let sd = SuperFrame::new(du, dv).unwrap();
        assert_eq!(super_dual_split(&sf, &sd, &k1, &k2, 1e-9).unwrap(), (true, true));
    }

    #[test]
    fn shared_slot_breaks_both_sides() {
        let f = frame(1, vec![e(1, 0)]);
        let id = QMatrix::identity(1);
        let r = super_dual_combine(&f, &f, &id, &f, &f, &id, 1e-9).unwrap();
        assert!(!r.equivalent && !r.combined_dual && r.agree);
        assert!((r.cross_residuals.0 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_operators_with_zero_duals() {
        let f = frame(1, vec![e(1, 0)]);
        let zf = frame(1, vec![QVector::zeros(1)]);
        let z = QMatrix::zeros(1, 1);
        let r = super_dual_combine(&f, &zf, &z, &f, &zf, &z, 1e-9).unwrap();
        assert!(r.equivalent && r.combined_dual);
        let sf = SuperFrame::new(f.clone(), f).unwrap();
        let sd = SuperFrame::new(zf.clone(), zf).unwrap();
        assert_eq!(super_dual_split(&sf, &sd, &z, &z, 1e-9).unwrap(), (true, true));
    }

    #[test]
    fn invalid_component_dual() {
        let f = frame(1, vec![e(1, 0)]);
        let zf = frame(1, vec![QVector::zeros(1)]);
        let id = QMatrix::identity(1);
        assert!(matches!(super_dual_combine(&f, &zf, &id, &f, &f, &id, 1e-9), Err(Error::NotADual { .. })));
    }
}
