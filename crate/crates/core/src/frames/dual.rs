//! K-duals, their parametrization, and the operator-to-sequence bijection.

use super::kframe::{check_square, kframe_check_with};
use super::FrameSystem;
use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{pinv, QMatrix};

/// `{L* e_i}` for `L: ℍⁿ → ℍᵐ`; its analysis operator is exactly `L`.
pub fn bessel_from_operator(l: &QMatrix) -> Result<FrameSystem> {
    FrameSystem::from_synthesis(&l.adjoint())
}

fn certified_factor(frame: &FrameSystem, k: &QMatrix, tol: f64) -> Result<QMatrix> {
    let r = kframe_check_with(frame, k, tol, false)?;
    match r.factor {
        Some(x) if r.is_kframe => Ok(x),
        _ => Err(Error::NotAKFrame { range_residual: r.range_residual }),
    }
}

/// `{X* e_i}` with `X = T⁺K`.
pub fn kdual_canonical(frame: &FrameSystem, k: &QMatrix, tol: f64) -> Result<FrameSystem> {
    bessel_from_operator(&certified_factor(frame, k, tol)?)
}

/// The dual generated by `X_W = T⁺K + (I − T⁺T) W`.
pub fn kdual_family(frame: &FrameSystem, k: &QMatrix, w: &QMatrix, tol: f64) -> Result<FrameSystem> {
    let m = frame.len();
    if w.rows() != m {
        return Err(dim_mismatch("parameter rows", m, w.rows()));
    }
    if w.cols() != frame.dim() {
        return Err(dim_mismatch("parameter columns", frame.dim(), w.cols()));
    }
    let x0 = certified_factor(frame, k, tol)?;
    let t = frame.synthesis();
    let null_proj = QMatrix::identity(m).try_sub(&(&pinv(t, None) * t))?;
    bessel_from_operator(&x0.try_add(&(&null_proj * w))?)
}

fn check_pair(frame: &FrameSystem, dual: &FrameSystem, k: &QMatrix) -> Result<()> {
    if dual.len() != frame.len() {
        return Err(dim_mismatch("dual length", frame.len(), dual.len()));
    }
    if dual.dim() != frame.dim() {
        return Err(dim_mismatch("dual dimension", frame.dim(), dual.dim()));
    }
    check_square(frame, k)
}

/// `‖K − T_F T_D*‖`
pub fn kdual_residual(frame: &FrameSystem, dual: &FrameSystem, k: &QMatrix) -> Result<f64> {
    check_pair(frame, dual, k)?;
    Ok(k.try_sub(&(frame.synthesis() * &dual.analysis()))?.op_norm())
}

pub fn kdual_verify(frame: &FrameSystem, dual: &FrameSystem, k: &QMatrix, tol: f64) -> Result<bool> {
    Ok(kdual_residual(frame, dual, k)? <= tol * (1.0 + k.op_norm()))
}

/// `‖K − T_D T_F*‖`: how far `D` with `F` is from reconstructing `K`.
pub fn interchange_residual(frame: &FrameSystem, dual: &FrameSystem, k: &QMatrix) -> Result<f64> {
    kdual_residual(dual, frame, k)
}

pub fn interchange_check(frame: &FrameSystem, dual: &FrameSystem, k: &QMatrix, tol: f64) -> Result<bool> {
    Ok(interchange_residual(frame, dual, k)? <= tol * (1.0 + k.op_norm()))
}

/// `{K u_i}` for a frame `{u_i}`.
pub fn apply_operator(frame: &FrameSystem, k: &QMatrix, tol: f64) -> Result<FrameSystem> {
    let b = frame.bounds();
    if !b.is_frame(tol) {
        return Err(Error::NotAFrame { lower_bound: b.lower });
    }
    check_square(frame, k)?;
    FrameSystem::from_synthesis(&(k * frame.synthesis()))
}
