//! K-frame certification and lower K-frame bounds.

use serde::{Deserialize, Serialize};

use super::{douglas_check, FrameSystem};
use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{hermitian_eigenvalues, psd_geq, QMatrix};

const BISECTION_STEPS: usize = 60;
const BISECTION_WIDTH: f64 = 1e-6;

/// Outcome of testing `{u_i}` against `A‖K*u‖² ≤ Σ|⟨u_i,u⟩|² ≤ B‖u‖²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KFrameReport {
    pub is_bessel: bool,
    pub bessel_bound: f64,
    /// `‖(I − T T⁺) K‖ / ‖K‖`
    pub range_residual: f64,
    /// Minimal-norm solution of `K = T X`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factor: Option<QMatrix>,
    /// `‖X‖⁻²`; absent when not a K-frame or when `K = 0`.
    pub lower_bound: Option<f64>,
    pub optimal_lower_bound: Option<f64>,
    /// `K = 0`: every `A > 0` is admissible.
    pub unbounded: bool,
    /// `A·KK* ≤ S` at slack `1e-8·scale` with `A = lower_bound`.
    pub bound_verified: bool,
    pub is_kframe: bool,
    pub tol: f64,
}

fn k_is_zero(k: &QMatrix) -> bool {
    k.max_abs() == 0.0
}

pub(super) fn check_square(frame: &FrameSystem, k: &QMatrix) -> Result<()> {
    let n = frame.dim();
    if k.rows() != n {
        return Err(dim_mismatch("operator rows", n, k.rows()));
    }
    if k.cols() != n {
        return Err(dim_mismatch("operator columns", n, k.cols()));
    }
    Ok(())
}

pub fn kframe_check(frame: &FrameSystem, k: &QMatrix, tol: f64) -> Result<KFrameReport> {
    kframe_check_with(frame, k, tol, true)
}

/// `kframe_check` without the bisection for the optimal bound.
pub(super) fn kframe_check_with(frame: &FrameSystem, k: &QMatrix, tol: f64, optimal: bool) -> Result<KFrameReport> {
    check_square(frame, k)?;
    let s = frame.frame_operator();
    let bessel_bound = frame.bounds().upper;
    let d = douglas_check(k, frame.synthesis(), tol)?;
    let unbounded = k_is_zero(k);
    let mut report = KFrameReport {
        is_bessel: bessel_bound.is_finite(),
        bessel_bound,
        range_residual: d.range_residual,
        factor: d.factor.clone(),
        lower_bound: None,
        optimal_lower_bound: None,
        unbounded,
        bound_verified: false,
        is_kframe: d.holds,
        tol,
    };
    if !d.holds {
        return Ok(report);
    }
    if unbounded {
        report.bound_verified = true;
        return Ok(report);
    }
    let x_norm = d.factor.as_ref().map_or(0.0, QMatrix::op_norm);
    let a = 1.0 / (x_norm * x_norm);
    let kk = k * &k.adjoint();
    let scale = 1.0 + bessel_bound + a * kk.op_norm();
    report.lower_bound = Some(a);
    report.bound_verified = psd_geq(&kk.scale(a), s, 1e-8 * scale)?;
    if optimal {
        report.optimal_lower_bound = Some(bisect(s, &kk, a, bessel_bound)?);
    }
    Ok(report)
}

/// Supremum of `c ≥ 0` with `c·KK* ≤ S`; `INFINITY` for `K = 0`.
pub fn optimal_lower_bound(frame: &FrameSystem, k: &QMatrix, tol: f64) -> Result<f64> {
    check_square(frame, k)?;
    let d = douglas_check(k, frame.synthesis(), tol)?;
    if !d.holds {
        return Err(Error::NotAKFrame { range_residual: d.range_residual });
    }
    if k_is_zero(k) {
        return Ok(f64::INFINITY);
    }
    let x_norm = d.factor.as_ref().map_or(0.0, QMatrix::op_norm);
    let kk = k * &k.adjoint();
    bisect(frame.frame_operator(), &kk, 1.0 / (x_norm * x_norm), frame.bounds().upper)
}

fn bisect(s: &QMatrix, kk: &QMatrix, start: f64, s_max: f64) -> Result<f64> {
    let vals = hermitian_eigenvalues(kk)?;
    let kk_max = vals.last().copied().unwrap_or(0.0);
    let min_pos = vals.iter().copied().find(|&v| v > 1e-12 * kk_max).unwrap_or(kk_max).max(f64::EPSILON);
    let slack = 1e-10 * (1.0 + s_max);
    let feasible = |c: f64| psd_geq(&kk.scale(c), s, slack);

    let mut lo = start;
    let mut hi = (s_max / min_pos).max(lo);
    if feasible(hi)? {
        return Ok(hi);
    }
    for _ in 0..BISECTION_STEPS {
        if hi - lo <= BISECTION_WIDTH * hi {
            break;
        }
        // geometric steps first so wide brackets shrink in a few iterations
        let mid = if hi > 4.0 * lo { (lo * hi).sqrt() } else { 0.5 * (lo + hi) };
        if feasible(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
