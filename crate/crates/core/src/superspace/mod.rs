//! Direct sums `H₁ ⊕ H₂` of quaternionic spaces and frames over them.

mod conditions;
mod duality;

pub use conditions::{
    component_kframes, duplicate_obstruction, minimal_sufficiency, minimality_kills_operator,
    necessary_range_condition, orthogonal_ranges_sufficient, super_kframe_necessary, super_minimal_check,
    ComponentNecessity, DuplicateReport, MinimalSufficiencyReport, MinimalityDiagnostics, OrthogonalRangesReport,
    RangeConditionReport, SuperMinimalReport,
};
pub use duality::{super_dual_combine, super_dual_split, DualCombineReport};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{dim_mismatch, Result};
use crate::frames::FrameSystem;
use crate::linalg::{inner, QMatrix, QVector};
use crate::quaternion::Quaternion;

/// `u ⊕ v`, stored as the concatenation `(u; v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperVector {
    split: usize,
    data: QVector,
}

impl SuperVector {
    pub fn new(left: &QVector, right: &QVector) -> Self {
        Self { split: left.len(), data: left.concat(right) }
    }

    /// Splits a vector of `ℍ^(n1+n2)` after its first `n1` entries.
    pub fn from_concatenated(data: QVector, n1: usize) -> Result<Self> {
        if n1 > data.len() {
            return Err(dim_mismatch("left block length", data.len(), n1));
        }
        Ok(Self { split: n1, data })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.split, self.data.len() - self.split)
    }

    pub fn left(&self) -> QVector {
        self.data.slice(0, self.split)
    }

    pub fn right(&self) -> QVector {
        self.data.slice(self.split, self.data.len())
    }

    pub fn as_qvector(&self) -> &QVector {
        &self.data
    }

    pub fn into_qvector(self) -> QVector {
        self.data
    }

    /// `⟨u1, u2⟩ + ⟨v1, v2⟩`
    pub fn inner(&self, other: &SuperVector) -> Result<Quaternion> {
        if self.dims() != other.dims() {
            return Err(dim_mismatch("left block length", self.split, other.split));
        }
        inner(&self.data, &other.data)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.norm_sqr()
    }
}

pub fn oplus(u: &QVector, v: &QVector) -> SuperVector {
    SuperVector::new(u, v)
}

/// `K1 ⊕ K2 = diag(K1, K2)`
pub fn oplus_op(k1: &QMatrix, k2: &QMatrix) -> QMatrix {
    k1.block_diag(k2)
}

/// Row blocks `(K1, K2)` of an operator on `ℍ^(n1+n2)`, so that
/// `K(w) = K1(w) ⊕ K2(w)`.
pub fn split_rows(k: &QMatrix, n1: usize) -> Result<(QMatrix, QMatrix)> {
    if n1 > k.rows() {
        return Err(dim_mismatch("left block rows", k.rows(), n1));
    }
    Ok((k.submatrix(0..n1, 0..k.cols()), k.submatrix(n1..k.rows(), 0..k.cols())))
}

/// Orthogonal projections onto `H1 ⊕ 0` and `0 ⊕ H2`.
pub fn projections(n1: usize, n2: usize) -> (QMatrix, QMatrix) {
    let mut p1 = vec![0.0; n1 + n2];
    p1[..n1].fill(1.0);
    let p2: Vec<f64> = p1.iter().map(|x| 1.0 - x).collect();
    (QMatrix::diag(&p1), QMatrix::diag(&p2))
}

/// Paired systems `{u_i}` in `ℍⁿ¹`, `{v_i}` in `ℍⁿ²` and the combined
/// system `{u_i ⊕ v_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperFrame {
    left: FrameSystem,
    right: FrameSystem,
    combined: FrameSystem,
}

impl SuperFrame {
    pub fn new(left: FrameSystem, right: FrameSystem) -> Result<Self> {
        if left.len() != right.len() {
            return Err(dim_mismatch("component length", left.len(), right.len()));
        }
        let t = left.synthesis().vstack(right.synthesis())?;
        let combined = FrameSystem::from_synthesis(&t)?;
        Ok(Self { left, right, combined })
    }

    /// Splits a system of `ℍ^(n1+n2)` into its components.
    pub fn from_combined(combined: &FrameSystem, n1: usize) -> Result<Self> {
        let (t1, t2) = split_rows(combined.synthesis(), n1)?;
        Self::new(FrameSystem::from_synthesis(&t1)?, FrameSystem::from_synthesis(&t2)?)
    }

    pub fn left(&self) -> &FrameSystem {
        &self.left
    }

    pub fn right(&self) -> &FrameSystem {
        &self.right
    }

    pub fn combined(&self) -> &FrameSystem {
        &self.combined
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.left.dim(), self.right.dim())
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn vector(&self, i: usize) -> SuperVector {
        SuperVector::new(&self.left.vectors()[i], &self.right.vectors()[i])
    }
}

/// Bessel status of the components and of the combined system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesselEquivalence {
    pub combined_bessel: bool,
    pub left_bessel: bool,
    pub right_bessel: bool,
    pub left_bound: f64,
    pub right_bound: f64,
    /// `λ_max(S)` of the combined system.
    pub combined_bound: f64,
    /// `2·max(B1, B2)`
    pub sum_bound: f64,
    pub equivalent: bool,
    pub within_sum_bound: bool,
}

pub fn super_bessel_equivalence(sf: &SuperFrame) -> BesselEquivalence {
    let left_bound = sf.left.bounds().upper;
    let right_bound = sf.right.bounds().upper;
    let combined_bound = sf.combined.bounds().upper;
    let combined_bessel = combined_bound.is_finite();
    let left_bessel = left_bound.is_finite();
    let right_bessel = right_bound.is_finite();
    let sum_bound = 2.0 * left_bound.max(right_bound);
    BesselEquivalence {
        combined_bessel,
        left_bessel,
        right_bessel,
        left_bound,
        right_bound,
        combined_bound,
        sum_bound,
        equivalent: combined_bessel == (left_bessel && right_bessel),
        within_sum_bound: combined_bound <= sum_bound + 1e-9,
    }
}

/// `max ‖S(u⊕v) − (S1u + T1θ2v) ⊕ (S2v + T2θ1u)‖` over the standard basis
/// of `ℍ^(n1+n2)`.
pub fn super_frame_operator_decomposition(sf: &SuperFrame) -> f64 {
    let (n1, n2) = sf.dims();
    let (t1, t2) = (sf.left.synthesis(), sf.right.synthesis());
    let (th1, th2) = (sf.left.analysis(), sf.right.analysis());
    let s = sf.combined.frame_operator();
    let mut worst = 0.0_f64;
    for k in 0..n1 + n2 {
        let w = SuperVector::from_concatenated(QVector::basis(n1 + n2, k), n1).expect("n1 ≤ n1+n2");
        let (u, v) = (w.left(), w.right());
        let left = &(sf.left.frame_operator() * &u) + &(t1 * &(&th2 * &v));
        let right = &(sf.right.frame_operator() * &v) + &(t2 * &(&th1 * &u));
        let expected = left.concat(&right);
        worst = worst.max((&(s * w.as_qvector()) - &expected).norm());
    }
    worst
}

#[derive(Serialize, Deserialize)]
struct SuperFrameRepr {
    dim1: usize,
    dim2: usize,
    left: FrameSystem,
    right: FrameSystem,
}

impl Serialize for SuperFrame {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (dim1, dim2) = self.dims();
        SuperFrameRepr { dim1, dim2, left: self.left.clone(), right: self.right.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SuperFrame {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SuperFrameRepr::deserialize(d)?;
        if repr.left.dim() != repr.dim1 || repr.right.dim() != repr.dim2 {
            return Err(D::Error::custom(format!(
                "component dimensions ({}, {}) do not match dim1 = {}, dim2 = {}",
                repr.left.dim(),
                repr.right.dim(),
                repr.dim1,
                repr.dim2
            )));
        }
        SuperFrame::new(repr.left, repr.right).map_err(D::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn sample_frame(n: usize, m: usize, seed: f64) -> FrameSystem {
        let vecs = (0..m)
            .map(|i| {
                QVector::new(
                    (0..n)
                        .map(|r| {
                            let t = seed + (m * r + i) as f64;
                            Quaternion::new(t.sin(), (1.7 * t).cos(), (0.3 * t).sin(), (2.1 * t).cos())
                        })
                        .collect(),
                )
            })
            .collect();
        FrameSystem::new(n, vecs).unwrap()
    }

    #[test]
    fn projections_are_exact() {
        let (p1, p2) = projections(1, 1);
        assert_eq!(p1, QMatrix::diag(&[1.0, 0.0]));
        assert_eq!(p2, QMatrix::diag(&[0.0, 1.0]));
        let (p1, p2) = projections(2, 3);
        assert_eq!(&p1 * &p1, p1);
        assert_eq!(p1.adjoint(), p1);
        assert_eq!(&p2 * &p2, p2);
        assert_eq!(&p1 + &p2, QMatrix::identity(5));
        assert_eq!(&p1 * &p2, QMatrix::zeros(5, 5));
        let u = QVector::new(vec![Quaternion::I, Quaternion::J]);
        let v = QVector::new(vec![Quaternion::K, Quaternion::ONE, Quaternion::new(1.0, 2.0, 3.0, 4.0)]);
        let w = oplus(&u, &v);
        assert_eq!(&p1 * w.as_qvector(), oplus(&u, &QVector::zeros(3)).into_qvector());
    }

    #[test]
    fn super_vector_inner_is_additive() {
        let u1 = QVector::new(vec![Quaternion::new(1.0, 2.0, 0.0, -1.0)]);
        let u2 = QVector::new(vec![Quaternion::new(0.0, 1.0, 3.0, 1.0)]);
        let v1 = QVector::new(vec![Quaternion::J, Quaternion::new(2.0, 0.0, 0.0, 1.0)]);
        let v2 = QVector::new(vec![Quaternion::I, Quaternion::K]);
        let a = oplus(&u1, &v1);
        let b = oplus(&u2, &v2);
        let lhs = a.inner(&b).unwrap();
        let rhs = inner(&u1, &u2).unwrap() + inner(&v1, &v2).unwrap();
        assert!(lhs.max_abs_diff(rhs) == 0.0);
        assert!((a.norm_sqr() - u1.norm_sqr() - v1.norm_sqr()).abs() < 1e-13);
        assert_eq!(a.left(), u1);
        assert_eq!(a.right(), v1);
        assert!(a.inner(&oplus(&v1, &u1)).is_err());
    }

    #[test]
    fn operator_sum_and_adjoint() {
        let k1 = QMatrix::from_fn(2, 2, |r, c| Quaternion::new(r as f64, 1.0, c as f64, -1.0));
        let k2 = QMatrix::from_fn(1, 1, |_, _| Quaternion::new(0.5, 0.0, 2.0, 0.0));
        let k = oplus_op(&k1, &k2);
        assert_eq!(k.adjoint(), oplus_op(&k1.adjoint(), &k2.adjoint()));
        let u = QVector::new(vec![Quaternion::I, Quaternion::new(1.0, 1.0, 0.0, 0.0)]);
        let v = QVector::new(vec![Quaternion::K]);
        assert_eq!(&k * oplus(&u, &v).as_qvector(), (&k1 * &u).concat(&(&k2 * &v)));
        let (a, b) = split_rows(&k, 2).unwrap();
        assert_eq!(a, k.submatrix(0..2, 0..3));
        assert_eq!(b, k.submatrix(2..3, 0..3));
    }

    #[test]
    fn combined_operators_decompose() {
        let sf = SuperFrame::new(sample_frame(2, 5, 0.0), sample_frame(3, 5, 11.0)).unwrap();
        let a = QVector::new((0..5).map(|i| Quaternion::new(i as f64, 1.0, -0.5, 0.25 * i as f64)).collect());
        let ta = sf.combined().synthesize(&a).unwrap();
        let split = sf.left().synthesize(&a).unwrap().concat(&sf.right().synthesize(&a).unwrap());
        assert!(ta.max_abs_diff(&split) < 1e-12);
        let w = oplus(&sf.left().vectors()[0], &sf.right().vectors()[1]);
        let lhs = sf.combined().analyze(w.as_qvector()).unwrap();
        let rhs = &sf.left().analyze(&w.left()).unwrap() + &sf.right().analyze(&w.right()).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        assert!(super_frame_operator_decomposition(&sf) < 1e-10);
    }

    #[test]
    fn standard_bases_bessel_bound() {
        let id = FrameSystem::from_synthesis(&QMatrix::identity(2)).unwrap();
        let sf = SuperFrame::new(id.clone(), id).unwrap();
        let b = super_bessel_equivalence(&sf);
        assert!(b.combined_bessel && b.left_bessel && b.right_bessel && b.equivalent);
        assert!(b.combined_bound <= 2.0 + 1e-12 && b.within_sum_bound);
    }

    #[test]
    fn zero_right_component() {
        let left = sample_frame(2, 3, 1.0);
        let right = FrameSystem::from_synthesis(&QMatrix::zeros(2, 3)).unwrap();
        let sf = SuperFrame::new(left.clone(), right).unwrap();
        let s = sf.combined().frame_operator();
        assert!(s.submatrix(0..2, 0..2).max_abs_diff(left.frame_operator()) < 1e-14);
        assert!(s.submatrix(2..4, 0..4).max_abs() == 0.0);
        assert!(super_frame_operator_decomposition(&sf) < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let sf = SuperFrame::new(sample_frame(1, 2, 0.0), sample_frame(2, 2, 3.0)).unwrap();
        let s = serde_json::to_string(&sf).unwrap();
        assert!(s.starts_with(r#"{"dim1":1,"dim2":2,"left":"#));
        assert_eq!(serde_json::from_str::<SuperFrame>(&s).unwrap(), sf);
        let bad = s.replace(r#""dim1":1"#, r#""dim1":4"#);
        assert!(serde_json::from_str::<SuperFrame>(&bad).is_err());
        assert!(SuperFrame::new(sample_frame(1, 2, 0.0), sample_frame(1, 3, 0.0)).is_err());
    }
}
