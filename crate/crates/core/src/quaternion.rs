//! Arithmetic of the real quaternion algebra.
//!
//! A quaternion `a0 + a1 i + a2 j + a3 k` is stored as four `f64`
//! components. Multiplication follows the Hamilton table
//! `i² = j² = k² = ijk = −1`, so `ij = k = −ji`, `jk = i = −kj`,
//! `ki = j = −ik`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        Self { a0, a1, a2, a3 }
    }

    /// Checked constructor; rejects NaN and infinities.
    pub fn try_new(a0: f64, a1: f64, a2: f64, a3: f64) -> Result<Self> {
        let q = Self::new(a0, a1, a2, a3);
        if q.is_finite() {
            Ok(q)
        } else {
            Err(Error::NonFinite)
        }
    }

    #[inline]
    pub const fn real(r: f64) -> Self {
        Self::new(r, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.a0.is_finite() && self.a1.is_finite() && self.a2.is_finite() && self.a3.is_finite()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.a0, -self.a1, -self.a2, -self.a3)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    /// The modulus `|q|`.
    #[inline]
    pub fn abs(self) -> f64 {
        // hypot-style scaling so that tiny and huge inputs do not under/overflow
        let s = self.max_abs_component();
        if s == 0.0 {
            return 0.0;
        }
        s * self.scale(1.0 / s).norm_sqr().sqrt()
    }

    #[inline]
    pub fn scale(self, r: f64) -> Self {
        Self::new(self.a0 * r, self.a1 * r, self.a2 * r, self.a3 * r)
    }

    fn max_abs_component(self) -> f64 {
        self.a0.abs().max(self.a1.abs()).max(self.a2.abs()).max(self.a3.abs())
    }

    /// `q⁻¹ = q̄ / |q|²`. Only the exact zero quaternion is rejected, so
    /// subnormal inputs are inverted.
    pub fn inv(self) -> Result<Self> {
        let s = self.max_abs_component();
        if s == 0.0 {
            return Err(Error::ZeroDivision);
        }
        let r = self.scale(1.0 / s);
        Ok(r.conj().scale(1.0 / (r.norm_sqr() * s)))
    }

    /// Inverse that also rejects `|q| <= 1e-14 * scale`, for use where the
    /// magnitude of `q` is only meaningful relative to surrounding data.
    pub fn inv_relative(self, scale: f64) -> Result<Self> {
        if self.abs() <= 1e-14 * scale.abs() {
            return Err(Error::ZeroDivision);
        }
        self.inv()
    }

    /// Componentwise maximum distance, used for exactness checks.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self - other).max_abs_component()
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.a0 + o.a0, self.a1 + o.a1, self.a2 + o.a2, self.a3 + o.a3)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.a0 - o.a0, self.a1 - o.a1, self.a2 - o.a2, self.a3 - o.a3)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.a0, -self.a1, -self.a2, -self.a3)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::new(
            p.a0 * q.a0 - p.a1 * q.a1 - p.a2 * q.a2 - p.a3 * q.a3,
            p.a0 * q.a1 + p.a1 * q.a0 + p.a2 * q.a3 - p.a3 * q.a2,
            p.a0 * q.a2 - p.a1 * q.a3 + p.a2 * q.a0 + p.a3 * q.a1,
            p.a0 * q.a3 + p.a1 * q.a2 - p.a2 * q.a1 + p.a3 * q.a0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, r: f64) -> Self {
        self.scale(r)
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl From<f64> for Quaternion {
    fn from(r: f64) -> Self {
        Self::real(r)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.a0, self.a1, self.a2, self.a3)
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a0, a1, a2, a3] = <[f64; 4]>::deserialize(d)?;
        Quaternion::try_new(a0, a1, a2, a3).map_err(serde::de::Error::custom)
    }
}
