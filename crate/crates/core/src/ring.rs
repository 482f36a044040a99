//! Minimal algebraic traits shared by the exact and numeric value types.

use core::fmt::{Debug, Display};

use alloc::format;
use alloc::string::{String, ToString};
use num_complex::Complex64;

/// Commutative ring with a complex-conjugation involution.
pub trait Ring: Clone + PartialEq + Debug + Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Text of the value as a product factor: `(negated, body)`, where an
    /// empty body stands for the unit.
    fn factor_text(&self) -> (bool, String) {
        let t = self.to_string();
        let (neg, body) = if t.contains(' ') {
            (false, format!("({})", t))
        } else if let Some(rest) = t.strip_prefix('-') {
            (true, String::from(rest))
        } else {
            (false, t)
        };
        if body == "1" {
            (neg, String::new())
        } else {
            (neg, body)
        }
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|d| self.mul(&d))
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
}

impl Field for Complex64 {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
}

/// Coefficient type for noncommutative polynomials: a ring receiving the
/// Laurent-polynomial structure constants of the rewrite rules.
pub trait Coeff: Ring + From<crate::scalar::QScalar> {}

impl<T: Ring + From<crate::scalar::QScalar>> Coeff for T {}
