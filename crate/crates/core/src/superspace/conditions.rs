//! Necessary and sufficient conditions for super K-frames.

use serde::{Deserialize, Serialize};

use super::{oplus_op, split_rows, SuperFrame, SuperVector};
use crate::error::{dim_mismatch, Error, Result};
use crate::frames::{k_minimal_check, kframe_check, FrameSystem, KFrameReport};
use crate::linalg::{
    inclusion_residual, null_basis, orth_complement, psd_geq, range_basis, rank, subspace_equal, svd, QMatrix, QVector,
};

fn certify_combined(sf: &SuperFrame, k: &QMatrix, tol: f64) -> Result<KFrameReport> {
    let r = kframe_check(sf.combined(), k, tol)?;
    if !r.is_kframe {
        return Err(Error::CertificateInvalid(format!(
            "combined system is not a K-frame (range residual {:e})",
            r.range_residual
        )));
    }
    Ok(r)
}

fn certify_component(frame: &FrameSystem, k: &QMatrix, tol: f64, side: &str) -> Result<KFrameReport> {
    let r = kframe_check(frame, k, tol)?;
    if !r.is_kframe {
        return Err(Error::ComponentNotCertified(format!(
            "{side} component is not a K-frame (range residual {:e})",
            r.range_residual
        )));
    }
    Ok(r)
}

fn check_blocks(sf: &SuperFrame, k1: &QMatrix, k2: &QMatrix) -> Result<()> {
    let (n1, n2) = sf.dims();
    if k1.shape() != (n1, n1) {
        return Err(dim_mismatch("K1 size", n1, k1.rows()));
    }
    if k2.shape() != (n2, n2) {
        return Err(dim_mismatch("K2 size", n2, k2.rows()));
    }
    Ok(())
}

fn columns_of(rows: usize, vs: &[QVector]) -> QMatrix {
    QMatrix::from_columns(rows, vs).expect("basis vectors share a length")
}

/// Residual of `R(A) ⊆ span(basis)` relative to `‖A‖_F`.
fn relative_inclusion(a: &QMatrix, basis: &[QVector]) -> f64 {
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        0.0
    } else {
        inclusion_residual(a, basis) / norm
    }
}

/// The displayed inequalities of the component theorem for a full `K`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentNecessity {
    /// `A·K1K1* ≤ S1 ≤ B·I`
    pub left_ok: bool,
    /// `A·K2K2* ≤ S2 ≤ B·I`
    pub right_ok: bool,
    /// Largest violation of the probed inequalities, relative to `1+B`.
    pub probe_violation: f64,
    pub holds: bool,
}

fn probes(n: usize) -> Vec<QVector> {
    use crate::quaternion::Quaternion;
    let units = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    let mut out: Vec<QVector> = (0..n).map(|k| QVector::basis(n, k)).collect();
    if n > 1 {
        out.push(QVector::new((0..n).map(|r| units[r % 4]).collect()));
        out.push(QVector::new((0..n).map(|r| units[(r + 1) % 4].scale(1.0 + r as f64)).collect()));
    }
    out
}

/// Checks `A‖K_b* u‖² ≤ Σ|⟨u_i,u⟩|² ≤ B‖u‖²` for both row blocks `K_b` of
/// `K`, given a certificate `(A, B)` for the combined system.
pub fn super_kframe_necessary(sf: &SuperFrame, k: &QMatrix, a: f64, b: f64, tol: f64) -> Result<ComponentNecessity> {
    let (n1, n2) = sf.dims();
    let n = n1 + n2;
    if k.shape() != (n, n) {
        return Err(dim_mismatch("operator size", n, k.rows()));
    }
    let s = sf.combined().frame_operator();
    let kk = k * &k.adjoint();
    let scale = 1.0 + b + a * kk.op_norm();
    let certificate =
        a > 0.0 && psd_geq(&kk.scale(a), s, 1e-8 * scale)? && psd_geq(s, &QMatrix::identity(n).scale(b), 1e-8 * scale)?;
    if !certificate {
        return Err(Error::CertificateInvalid(format!("({a:e}, {b:e}) are not K-frame bounds of the combined system")));
    }
    let (k1, k2) = split_rows(k, n1)?;
    let mut violation = 0.0_f64;
    let mut side = |frame: &FrameSystem, kb: &QMatrix| -> Result<bool> {
        for u in probes(frame.dim()) {
            let energy = frame.energy(&u)?;
            let lower = a * (&kb.adjoint() * &u).norm_sqr();
            let upper = b * u.norm_sqr();
            violation = violation.max((lower - energy).max(energy - upper) / (scale * u.norm_sqr()));
        }
        let kbk = kb * &kb.adjoint();
        let slack = tol * scale;
        Ok(psd_geq(&kbk.scale(a), frame.frame_operator(), slack)?
            && psd_geq(frame.frame_operator(), &QMatrix::identity(frame.dim()).scale(b), slack)?)
    };
    let left_ok = side(sf.left(), &k1)?;
    let right_ok = side(sf.right(), &k2)?;
    let holds = left_ok && right_ok && violation <= tol;
    Ok(ComponentNecessity { left_ok, right_ok, probe_violation: violation.max(0.0), holds })
}

/// K-frame reports of `{u_i}` for `K1` and of `{v_i}` for `K2`.
pub fn component_kframes(
    sf: &SuperFrame,
    k1: &QMatrix,
    k2: &QMatrix,
    tol: f64,
) -> Result<(KFrameReport, KFrameReport)> {
    check_blocks(sf, k1, k2)?;
    Ok((kframe_check(sf.left(), k1, tol)?, kframe_check(sf.right(), k2, tol)?))
}

/// Whether `{u_i ⊕ u_i}` is a `K1⊕K2`-frame, with the obstruction `u ⊕ (−u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DuplicateReport {
    pub is_superkframe: bool,
    pub operators_zero: bool,
    pub witness: Option<SuperVector>,
    /// `Σ |⟨u_i ⊕ u_i, w⟩|²` for the witness `w`.
    pub witness_energy: f64,
    /// `‖(K1⊕K2)* w‖`
    pub witness_image: f64,
}

pub fn duplicate_obstruction(frame: &FrameSystem, k1: &QMatrix, k2: &QMatrix, tol: f64) -> Result<DuplicateReport> {
    let n = frame.dim();
    for (name, k) in [("K1 size", k1), ("K2 size", k2)] {
        if k.shape() != (n, n) {
            return Err(dim_mismatch(name, n, k.rows()));
        }
    }
    let sf = SuperFrame::new(frame.clone(), frame.clone())?;
    let k = oplus_op(k1, k2);
    let is_superkframe = kframe_check(sf.combined(), &k, tol)?.is_kframe;
    let joint = k1.hstack(k2)?;
    let operators_zero = joint.op_norm() <= tol;
    let mut report =
        DuplicateReport { is_superkframe, operators_zero, witness: None, witness_energy: 0.0, witness_image: 0.0 };
    if !operators_zero {
        let u = svd(&joint).left.into_iter().next().expect("n ≥ 1");
        let w = SuperVector::new(&u, &u.scale(-1.0));
        report.witness_energy = sf.combined().energy(w.as_qvector())?;
        report.witness_image = (&k.adjoint() * w.as_qvector()).norm();
        report.witness = Some(w);
    }
    Ok(report)
}

/// Sufficiency of `R(θ1) ⊥ R(θ2)` for the combined system.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalRangesReport {
    pub applies: bool,
    /// `(‖T2θ1‖, ‖T1θ2‖)`
    pub cross_residuals: (f64, f64),
    pub scale: f64,
    pub frame: SuperFrame,
    /// `min(A1, A2)`; absent when both operators vanish.
    pub lower_bound: Option<f64>,
    /// The combined system passes `kframe_check` for `K1⊕K2`.
    pub certified: bool,
    /// `min(A1, A2)·(K1⊕K2)(K1⊕K2)* ≤ S`
    pub bound_verified: bool,
}

pub(crate) fn cross_scale(t1: &QMatrix, th1: &QMatrix, t2: &QMatrix, th2: &QMatrix) -> f64 {
    ((1.0 + t1.op_norm()) * (1.0 + th2.op_norm())).max((1.0 + t2.op_norm()) * (1.0 + th1.op_norm()))
}

pub fn orthogonal_ranges_sufficient(
    fu: &FrameSystem,
    k1: &QMatrix,
    fv: &FrameSystem,
    k2: &QMatrix,
    tol: f64,
) -> Result<OrthogonalRangesReport> {
    let r1 = certify_component(fu, k1, tol, "left")?;
    let r2 = certify_component(fv, k2, tol, "right")?;
    let sf = SuperFrame::new(fu.clone(), fv.clone())?;
    let (t1, t2) = (fu.synthesis(), fv.synthesis());
    let (th1, th2) = (fu.analysis(), fv.analysis());
    let cross = ((t2 * &th1).op_norm(), (t1 * &th2).op_norm());
    let scale = cross_scale(t1, &th1, t2, &th2);
    let applies = cross.0 <= tol * scale && cross.1 <= tol * scale;
    let k = oplus_op(k1, k2);
    let combined = kframe_check(sf.combined(), &k, tol)?;
    let lower_bound = match (r1.lower_bound, r2.lower_bound) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let bound_verified = match lower_bound {
        Some(a) => {
            let kk = &k * &k.adjoint();
            let s = sf.combined().frame_operator();
            psd_geq(&kk.scale(a), s, 1e-8 * (1.0 + s.op_norm() + a * kk.op_norm()))?
        }
        None => true,
    };
    Ok(OrthogonalRangesReport {
        applies,
        cross_residuals: cross,
        scale,
        frame: sf,
        lower_bound,
        certified: combined.is_kframe,
        bound_verified,
    })
}

/// Range conditions forced on a certified `K1⊕K2`-frame.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RangeConditionReport {
    /// `R(K1) ⊆ T1(N(T2))`
    pub cond1: bool,
    /// `R(K2) ⊆ T2(N(T1))`
    pub cond2: bool,
    pub cond1_residual: f64,
    pub cond2_residual: f64,
    /// `R(K1) ⊆ T2(N(T1))`, meaningful only when `n1 = n2`.
    pub swapped1: Option<bool>,
    /// `R(K2) ⊆ T1(N(T2))`, meaningful only when `n1 = n2`.
    pub swapped2: Option<bool>,
    pub swapped1_residual: Option<f64>,
    pub swapped2_residual: Option<f64>,
}

/// Orthonormal basis of `T(span(basis))`.
fn image_basis(t: &QMatrix, basis: &[QVector]) -> Vec<QVector> {
    if basis.is_empty() {
        return Vec::new();
    }
    let image = t * &columns_of(t.cols(), basis);
    range_basis(&image, Some(1e-10 * (1.0 + t.op_norm())))
}

pub fn necessary_range_condition(
    sf: &SuperFrame,
    k1: &QMatrix,
    k2: &QMatrix,
    tol: f64,
) -> Result<RangeConditionReport> {
    check_blocks(sf, k1, k2)?;
    certify_combined(sf, &oplus_op(k1, k2), tol)?;
    let (t1, t2) = (sf.left().synthesis(), sf.right().synthesis());
    let n_1 = null_basis(t1, None);
    let n_2 = null_basis(t2, None);
    let t1_n2 = image_basis(t1, &n_2);
    let t2_n1 = image_basis(t2, &n_1);
    let cond1_residual = relative_inclusion(k1, &t1_n2);
    let cond2_residual = relative_inclusion(k2, &t2_n1);
    let mut report = RangeConditionReport {
        cond1: cond1_residual <= tol,
        cond2: cond2_residual <= tol,
        cond1_residual,
        cond2_residual,
        swapped1: None,
        swapped2: None,
        swapped1_residual: None,
        swapped2_residual: None,
    };
    let (n1, n2) = sf.dims();
    if n1 == n2 {
        let s1 = relative_inclusion(k1, &t2_n1);
        let s2 = relative_inclusion(k2, &t1_n2);
        report.swapped1 = Some(s1 <= tol);
        report.swapped2 = Some(s2 <= tol);
        report.swapped1_residual = Some(s1);
        report.swapped2_residual = Some(s2);
    }
    Ok(report)
}

/// Minimality of each component and the operator norms it constrains.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalityDiagnostics {
    pub left_minimal: bool,
    pub right_minimal: bool,
    pub k1_norm: f64,
    pub k2_norm: f64,
}

/// A minimal left component forces `K2 = 0` and a minimal right one forces
/// `K1 = 0`; a violation is reported as `AssertionFailure`.
pub fn minimality_kills_operator(
    sf: &SuperFrame,
    k1: &QMatrix,
    k2: &QMatrix,
    tol: f64,
) -> Result<MinimalityDiagnostics> {
    check_blocks(sf, k1, k2)?;
    let k = oplus_op(k1, k2);
    certify_combined(sf, &k, tol)?;
    let m = sf.len();
    let d = MinimalityDiagnostics {
        left_minimal: rank(sf.left().synthesis(), None) == m,
        right_minimal: rank(sf.right().synthesis(), None) == m,
        k1_norm: k1.op_norm(),
        k2_norm: k2.op_norm(),
    };
    let limit = tol * (1.0 + k.op_norm());
    if d.left_minimal && d.k2_norm > limit {
        return Err(Error::AssertionFailure { what: "left component minimal but K2 ≠ 0".into(), norm: d.k2_norm });
    }
    if d.right_minimal && d.k1_norm > limit {
        return Err(Error::AssertionFailure { what: "right component minimal but K1 ≠ 0".into(), norm: d.k1_norm });
    }
    Ok(d)
}

/// Minimality of the combined system by three routes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuperMinimalReport {
    /// `rank([T1; T2]) = m`
    pub minimal: bool,
    /// `dim(N(T1) ∩ N(T2))`
    pub null_intersection: usize,
    /// Verdict of `k_minimal_check` on the combined system.
    pub direct: bool,
    pub agree: bool,
}

pub fn super_minimal_check(sf: &SuperFrame, k: &QMatrix, tol: f64) -> Result<SuperMinimalReport> {
    certify_combined(sf, k, tol)?;
    let m = sf.len();
    let minimal = rank(sf.combined().synthesis(), None) == m;
    let n_1 = null_basis(sf.left().synthesis(), None);
    let n_2 = null_basis(sf.right().synthesis(), None);
    let mut both = n_1.clone();
    both.extend(n_2.iter().cloned());
    let joint = if both.is_empty() { 0 } else { rank(&columns_of(m, &both), None) };
    let null_intersection = n_1.len() + n_2.len() - joint;
    let direct = k_minimal_check(sf.combined(), k, tol)?.minimal;
    Ok(SuperMinimalReport {
        minimal,
        null_intersection,
        direct,
        agree: minimal == direct && minimal == (null_intersection == 0),
    })
}

/// `R(θ1) = R(θ2)^⊥` and its consequences.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalSufficiencyReport {
    pub complementary: bool,
    /// Largest mutual projection residual between `R(θ1)` and `R(θ2)^⊥`.
    pub residual: f64,
    pub dims: (usize, usize),
    /// `dim R(θ1) + dim R(θ2) = m`
    pub dimension_count: bool,
    pub orthogonal_ranges: bool,
    pub super_minimal: bool,
}

/// When the analysis ranges are complementary, the combined system must be
/// a certified, minimal `K1⊕K2`-frame; a violation is `AssertionFailure`.
pub fn minimal_sufficiency(
    fu: &FrameSystem,
    k1: &QMatrix,
    fv: &FrameSystem,
    k2: &QMatrix,
    tol: f64,
) -> Result<MinimalSufficiencyReport> {
    let ortho = orthogonal_ranges_sufficient(fu, k1, fv, k2, tol)?;
    let m = fu.len();
    let r1 = range_basis(&fu.analysis(), None);
    let r2 = range_basis(&fv.analysis(), None);
    let complement = orth_complement(&r2, m)?;
    let test = subspace_equal(m, &r1, &complement, tol * (1.0 + (m as f64).sqrt()));
    let residual = test.a_in_b.max(test.b_in_a);
    let super_minimal = rank(ortho.frame.combined().synthesis(), None) == m;
    let report = MinimalSufficiencyReport {
        complementary: test.equal,
        residual,
        dims: (r1.len(), r2.len()),
        dimension_count: r1.len() + r2.len() == m,
        orthogonal_ranges: ortho.applies,
        super_minimal,
    };
    if report.complementary {
        if !ortho.applies || !ortho.certified {
            return Err(Error::AssertionFailure {
                what: "complementary analysis ranges without orthogonal cross terms".into(),
                norm: ortho.cross_residuals.0.max(ortho.cross_residuals.1),
            });
        }
        if !super_minimal || !report.dimension_count {
            return Err(Error::AssertionFailure {
                what: "complementary analysis ranges but combined system not minimal".into(),
                norm: residual,
            });
        }
    }
    Ok(report)
}
