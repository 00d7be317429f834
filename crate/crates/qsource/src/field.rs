//! Scalar fields: complex doubles and exact big rationals.

use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{EvalError, Result};

pub type C64 = Complex64;
pub type Q = BigRational;

/// Which concrete field a computation runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldKind {
    Complex,
    Exact,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Complex => "complex",
            FieldKind::Exact => "exact",
        }
    }
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const KIND: FieldKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Literal zero test.
    fn is_zero(&self) -> bool;
    /// |x| as a double (approximate for exact values).
    fn modulus(&self) -> f64;
    fn to_c64(&self) -> C64;
    /// Only the complex field accepts arbitrary complex numbers.
    fn from_c64(z: C64) -> Option<Self>;

    fn is_exact() -> bool {
        Self::KIND == FieldKind::Exact
    }

    fn is_finite(&self) -> bool {
        true
    }

    /// Inverse, rejecting anything within `tol` of zero (exact field: literal zero only).
    fn checked_inv(&self, tol: f64) -> Result<Self> {
        if self.is_zero() || (!Self::is_exact() && !(self.modulus() >= tol)) {
            return Err(EvalError::Singular);
        }
        let r = Self::one() / self.clone();
        if r.is_finite() {
            Ok(r)
        } else {
            Err(EvalError::Singular)
        }
    }

    fn checked_div(&self, d: &Self, tol: f64) -> Result<Self> {
        d.checked_inv(tol)?;
        let r = self.clone() / d.clone();
        if r.is_finite() {
            Ok(r)
        } else {
            Err(EvalError::Singular)
        }
    }

    /// Integer power; negative exponents invert (zero base is rejected).
    fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            self.checked_inv(0.0)?
        } else {
            self.clone()
        };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * sq.clone();
            }
            k >>= 1;
            if k > 0 {
                sq = sq.clone() * sq;
            }
        }
        Ok(acc)
    }

    /// Relative discrepancy |a−b|/max(1,|a|,|b|); in the exact field it is 0
    /// exactly when the values are equal and strictly positive otherwise.
    fn residual(&self, other: &Self) -> f64 {
        if Self::is_exact() && self == other {
            return 0.0;
        }
        let d = (self.clone() - other.clone()).modulus();
        let scale = 1f64.max(self.modulus()).max(other.modulus());
        let r = d / scale;
        if Self::is_exact() && !(r > 0.0) {
            f64::MIN_POSITIVE
        } else if r.is_nan() {
            f64::INFINITY
        } else {
            r
        }
    }

    /// Closeness: exact equality, or |a−b| ≤ tol·max(1,|a|,|b|).
    fn close(&self, other: &Self, tol: f64) -> bool {
        if Self::is_exact() {
            self == other
        } else {
            self.residual(other) <= tol
        }
    }
}

impl Scalar for C64 {
    const KIND: FieldKind = FieldKind::Complex;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        C64::new(num as f64 / den as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn from_c64(z: C64) -> Option<Self> {
        Some(z)
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Scalar for Q {
    const KIND: FieldKind = FieldKind::Exact;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Q::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Q::new(BigInt::from(num), BigInt::from(den))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn modulus(&self) -> f64 {
        let a = self.abs();
        match a.to_f64() {
            Some(x) => x,
            None => f64::INFINITY,
        }
    }
    fn to_c64(&self) -> C64 {
        C64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn from_c64(_: C64) -> Option<Self> {
        None
    }
}

pub fn product<S: Scalar, I: IntoIterator<Item = S>>(it: I) -> S {
    it.into_iter().fold(S::one(), |a, b| a * b)
}

pub fn sum<S: Scalar, I: IntoIterator<Item = S>>(it: I) -> S {
    it.into_iter().fold(S::zero(), |a, b| a + b)
}

/// Division guarded against a literal (or non-finite) zero denominator.
pub fn div<S: Scalar>(a: S, b: &S) -> Result<S> {
    a.checked_div(b, 0.0)
}

/// (−1)^k as a field element.
pub fn sign<S: Scalar>(k: usize) -> S {
    if k % 2 == 0 {
        S::one()
    } else {
        -S::one()
    }
}
