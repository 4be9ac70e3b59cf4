use std::ops::{Add, Index, IndexMut, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{dim_mismatch, Result};
use crate::quaternion::Quaternion;

/// A vector of ℍⁿ. Scalars act on the right: `(u·q)_k = u_k q`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QVector {
    entries: Vec<Quaternion>,
}

impl QVector {
    pub fn new(entries: Vec<Quaternion>) -> Self {
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Quaternion::ZERO; n])
    }

    /// The `k`-th standard basis vector of ℍⁿ.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.entries[k] = Quaternion::ONE;
        v
    }

    pub fn from_reals(xs: &[f64]) -> Self {
        Self::new(xs.iter().map(|&x| Quaternion::real(x)).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Quaternion> {
        self.entries.iter()
    }

    pub fn into_inner(self) -> Vec<Quaternion> {
        self.entries
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Right scalar multiplication `u·q`.
    pub fn right_mul(&self, q: Quaternion) -> Self {
        Self::new(self.entries.iter().map(|&x| x * q).collect())
    }

    pub fn scale(&self, r: f64) -> Self {
        Self::new(self.entries.iter().map(|&x| x.scale(r)).collect())
    }

    /// `self += v·q`
    pub fn axpy(&mut self, v: &QVector, q: Quaternion) {
        debug_assert_eq!(self.len(), v.len());
        for (a, &b) in self.entries.iter_mut().zip(&v.entries) {
            *a += b * q;
        }
    }

    /// Concatenation `self ⊕ other`.
    pub fn concat(&self, other: &QVector) -> Self {
        let mut e = self.entries.clone();
        e.extend_from_slice(&other.entries);
        Self::new(e)
    }

    pub fn slice(&self, start: usize, end: usize) -> Self {
        Self::new(self.entries[start..end].to_vec())
    }

    pub fn max_abs_diff(&self, other: &QVector) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| a.max_abs_diff(*b)).fold(0.0, f64::max)
    }

    /// Returns `self / ‖self‖`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }
}

/// `⟨u, v⟩ = Σ conj(u_k) v_k`, right-linear in the second slot.
pub fn inner(u: &QVector, v: &QVector) -> Result<Quaternion> {
    if u.len() != v.len() {
        return Err(dim_mismatch("inner product operand", u.len(), v.len()));
    }
    Ok(inner_unchecked(u.as_slice(), v.as_slice()))
}

#[inline]
pub(crate) fn inner_unchecked(u: &[Quaternion], v: &[Quaternion]) -> Quaternion {
    u.iter().zip(v).map(|(&a, &b)| a.conj() * b).sum()
}

impl Index<usize> for QVector {
    type Output = Quaternion;
    fn index(&self, k: usize) -> &Quaternion {
        &self.entries[k]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, k: usize) -> &mut Quaternion {
        &mut self.entries[k]
    }
}

impl From<Vec<Quaternion>> for QVector {
    fn from(entries: Vec<Quaternion>) -> Self {
        Self::new(entries)
    }
}

impl FromIterator<Quaternion> for QVector {
    fn from_iter<I: IntoIterator<Item = Quaternion>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, o: &QVector) -> QVector {
        assert_eq!(self.len(), o.len(), "vector length mismatch");
        self.entries.iter().zip(&o.entries).map(|(&a, &b)| a + b).collect()
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, o: &QVector) -> QVector {
        assert_eq!(self.len(), o.len(), "vector length mismatch");
        self.entries.iter().zip(&o.entries).map(|(&a, &b)| a - b).collect()
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        self.entries.iter().map(|&a| -a).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn inner_products_of_basis_vectors() {
        let e1 = QVector::basis(2, 0);
        let e2 = QVector::basis(2, 1);
        assert_eq!(inner(&e1, &e1).unwrap(), Quaternion::ONE);
        assert_eq!(inner(&e1, &e2).unwrap(), Quaternion::ZERO);
    }

    #[test]
    fn inner_conjugates_first_slot() {
        let u = QVector::new(vec![Quaternion::I, Quaternion::ZERO]);
        let v = QVector::new(vec![Quaternion::J, Quaternion::ZERO]);
        // conj(i)·j = -ij = -k
        assert_eq!(inner(&u, &v).unwrap(), -Quaternion::K);
    }

    #[test]
    fn inner_rejects_length_mismatch() {
        let r = inner(&QVector::zeros(2), &QVector::zeros(3));
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn norms() {
        let one = Quaternion::ONE;
        let u = QVector::new(vec![one + Quaternion::I, one - Quaternion::I]);
        assert!((u.norm() - 2.0).abs() < 1e-15);
        assert_eq!(QVector::zeros(3).norm(), 0.0);
    }

    #[test]
    fn second_slot_is_right_linear() {
        let u = QVector::new(vec![Quaternion::new(1.0, 2.0, -1.0, 0.5), Quaternion::J]);
        let v = QVector::new(vec![Quaternion::new(0.2, 0.0, 1.0, -3.0), Quaternion::K]);
        let q = Quaternion::new(0.7, -0.1, 0.4, 1.1);
        let lhs = inner(&u, &v.right_mul(q)).unwrap();
        let rhs = inner(&u, &v).unwrap() * q;
        assert!(lhs.max_abs_diff(rhs) < 1e-14);
        // first slot: <vq, u> = conj(q) <v, u>
        let lhs = inner(&v.right_mul(q), &u).unwrap();
        let rhs = q.conj() * inner(&v, &u).unwrap();
        assert!(lhs.max_abs_diff(rhs) < 1e-14);
    }
}
