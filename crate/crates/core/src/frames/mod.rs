//! Finite frame systems in ℍⁿ and the K-frame machinery built on them.

mod douglas;
mod dual;
mod kframe;
mod minimal;

pub use douglas::{douglas_check, DouglasReport};
pub use dual::{
    apply_operator, bessel_from_operator, interchange_check, interchange_residual, kdual_canonical, kdual_family,
    kdual_residual, kdual_verify,
};
pub use kframe::{kframe_check, optimal_lower_bound, KFrameReport};
pub use minimal::{k_minimal_check, k_orthonormal_check, k_orthonormal_dual, max_vector_distance, MinimalityReport};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{hermitian_eigenvalues, QMatrix, QVector};

/// Default acceptance tolerance for duality residuals: `1e-9·(1+‖K‖)·(1+‖T‖)`.
pub fn duality_tol(k_norm: f64, t_norm: f64) -> f64 {
    1e-9 * (1.0 + k_norm) * (1.0 + t_norm)
}

/// A finite sequence `{u_i}` in ℍⁿ with its synthesis matrix `T` (column
/// `i` is `u_i`) and frame operator `S = T T*`, both computed on
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameSystem {
    dim: usize,
    vectors: Vec<QVector>,
    synthesis: QMatrix,
    frame_operator: QMatrix,
}

impl FrameSystem {
    pub fn new(dim: usize, vectors: Vec<QVector>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(dim_mismatch("frame vector length", dim, v.len()));
        }
        if vectors.iter().any(|v| v.iter().any(|q| !q.is_finite())) {
            return Err(Error::NonFinite);
        }
        let synthesis = QMatrix::from_columns(dim, &vectors)?;
        let frame_operator = &synthesis * &synthesis.adjoint();
        Ok(Self { dim, vectors, synthesis, frame_operator })
    }

    /// The system whose synthesis matrix is `t`.
    pub fn from_synthesis(t: &QMatrix) -> Result<Self> {
        Self::new(t.rows(), t.columns())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors `m`.
    #[inline]
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[QVector] {
        &self.vectors
    }

    /// `T: ℍᵐ → ℍⁿ`, `q ↦ Σ u_i q_i`.
    pub fn synthesis(&self) -> &QMatrix {
        &self.synthesis
    }

    /// `θ = T*: ℍⁿ → ℍᵐ`, `u ↦ {⟨u_i, u⟩}`.
    pub fn analysis(&self) -> QMatrix {
        self.synthesis.adjoint()
    }

    /// `S = Tθ`, `u ↦ Σ u_i ⟨u_i, u⟩`.
    pub fn frame_operator(&self) -> &QMatrix {
        &self.frame_operator
    }

    pub fn synthesize(&self, coefficients: &QVector) -> Result<QVector> {
        self.synthesis.matvec(coefficients)
    }

    pub fn analyze(&self, u: &QVector) -> Result<QVector> {
        if u.len() != self.dim {
            return Err(dim_mismatch("analysed vector length", self.dim, u.len()));
        }
        Ok(self.vectors.iter().map(|v| crate::linalg::inner(v, u).expect("lengths checked")).collect())
    }

    /// `Σ |⟨u_i, u⟩|²`
    pub fn energy(&self, u: &QVector) -> Result<f64> {
        Ok(self.analyze(u)?.norm_sqr())
    }

    pub fn bounds(&self) -> FrameBounds {
        frame_bounds(self)
    }

    /// Maximum entrywise distance to `other`; `INFINITY` if the shapes differ.
    pub fn max_abs_diff(&self, other: &FrameSystem) -> f64 {
        self.synthesis.max_abs_diff(&other.synthesis)
    }
}

/// Optimal frame bounds `A = λ_min(S)`, `B = λ_max(S)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    pub fn is_frame(&self, tol: f64) -> bool {
        self.lower > tol * self.upper.max(1.0)
    }

    pub fn is_parseval(&self, tol: f64) -> bool {
        (self.lower - 1.0).abs().max((self.upper - 1.0).abs()) <= tol
    }
}

pub fn frame_bounds(frame: &FrameSystem) -> FrameBounds {
    let vals = hermitian_eigenvalues(frame.frame_operator()).expect("frame operator is Hermitian");
    FrameBounds {
        lower: vals.first().copied().unwrap_or(0.0).max(0.0),
        upper: vals.last().copied().unwrap_or(0.0).max(0.0),
    }
}

#[derive(Serialize, Deserialize)]
struct FrameRepr {
    dim: usize,
    vectors: Vec<QVector>,
}

impl Serialize for FrameSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FrameRepr { dim: self.dim, vectors: self.vectors.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FrameSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FrameRepr::deserialize(d)?;
        FrameSystem::new(repr.dim, repr.vectors).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion;

    fn e(n: usize, k: usize) -> QVector {
        QVector::basis(n, k)
    }

    #[test]
    fn standard_basis_is_parseval() {
        let f = FrameSystem::new(2, vec![e(2, 0), e(2, 1)]).unwrap();
        assert_eq!(f.frame_operator(), &QMatrix::identity(2));
        let b = f.bounds();
        assert!((b.lower - 1.0).abs() < 1e-14 && (b.upper - 1.0).abs() < 1e-14);
        assert!(b.is_frame(1e-9));
        assert!(b.is_parseval(1e-9));
    }

    #[test]
    fn repeated_vector() {
        let f = FrameSystem::new(2, vec![e(2, 0), e(2, 0), e(2, 1)]).unwrap();
        assert_eq!(f.frame_operator(), &QMatrix::diag(&[2.0, 1.0]));
        let b = f.bounds();
        assert!((b.lower - 1.0).abs() < 1e-14 && (b.upper - 2.0).abs() < 1e-14);
        assert!(!b.is_parseval(1e-9));
    }

    #[test]
    fn rank_deficient_system_is_not_a_frame() {
        let f = FrameSystem::new(2, vec![e(2, 0)]).unwrap();
        let b = f.bounds();
        assert!(b.lower.abs() < 1e-15);
        assert!(!b.is_frame(1e-9));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FrameSystem::new(2, vec![]), Err(Error::EmptyFrame));
        assert!(matches!(FrameSystem::new(2, vec![e(3, 0)]), Err(Error::DimensionMismatch(_))));
        let nan = QVector::new(vec![Quaternion::new(f64::NAN, 0.0, 0.0, 0.0)]);
        assert_eq!(FrameSystem::new(1, vec![nan]), Err(Error::NonFinite));
    }

    #[test]
    fn analysis_matches_inner_products() {
        let u1 = QVector::new(vec![Quaternion::I, Quaternion::new(1.0, 0.0, 2.0, 0.0)]);
        let u2 = QVector::new(vec![Quaternion::K, Quaternion::ONE]);
        let f = FrameSystem::new(2, vec![u1.clone(), u2.clone()]).unwrap();
        let u = QVector::new(vec![Quaternion::new(0.5, -1.0, 0.0, 3.0), Quaternion::J]);
        let direct = f.analyze(&u).unwrap();
        let via_matrix = f.analysis().matvec(&u).unwrap();
        assert!(direct.max_abs_diff(&via_matrix) < 1e-15);
        let energy = f.energy(&u).unwrap();
        let quad = crate::linalg::inner(&(f.frame_operator() * &u), &u).unwrap();
        assert!((quad.a0 - energy).abs() < 1e-13);
        assert!(quad.a1.abs().max(quad.a2.abs()).max(quad.a3.abs()) < 1e-13);
    }

    #[test]
    fn json_round_trip() {
        let f = FrameSystem::new(2, vec![e(2, 0), e(2, 1)]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<FrameSystem>(&s).unwrap(), f);
        assert!(serde_json::from_str::<FrameSystem>(r#"{"dim":3,"vectors":[[[1,0,0,0]]]}"#).is_err());
    }
}
