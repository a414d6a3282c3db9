//! Tolerant floating-point scalars for inputs whose entries are irrational.
//!
//! Two values compare equal when `|x - y| <= eps * max(1, |x|, |y|)`. Every
//! value carries its tolerance; binary operations keep the larger of the two,
//! so constants (`zero`, `one`) with `eps = 0` adopt the tolerance of the data
//! they are combined with.

use std::fmt;

use num::complex::Complex64;

use crate::field::Field;
use crate::scalar::Scalar;

pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Clone, Copy, PartialEq)]
pub struct FloatScalar {
    pub value: Complex64,
    pub eps: f64,
}

impl FloatScalar {
    pub fn new(value: Complex64, eps: f64) -> Self {
        FloatScalar { value, eps }
    }

    pub fn real(re: f64, eps: f64) -> Self {
        FloatScalar::new(Complex64::new(re, 0.0), eps)
    }

    pub fn from_scalar(s: &Scalar, eps: f64) -> Self {
        FloatScalar::new(s.to_c64(), eps)
    }

    fn with(&self, value: Complex64, rhs: &Self) -> Self {
        FloatScalar::new(value, self.eps.max(rhs.eps))
    }
}

impl fmt::Display for FloatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Complex64 { re, im } = self.value;
        if im == 0.0 {
            write!(f, "{re}")
        } else if im < 0.0 {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl fmt::Debug for FloatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}~{}", self.eps)
    }
}

impl Field for FloatScalar {
    const EXACT: bool = false;

    fn zero() -> Self {
        FloatScalar::real(0.0, 0.0)
    }

    fn one() -> Self {
        FloatScalar::real(1.0, 0.0)
    }

    fn from_i64(v: i64) -> Self {
        FloatScalar::real(v as f64, 0.0)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.with(self.value + rhs.value, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.with(self.value - rhs.value, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.with(self.value * rhs.value, rhs)
    }

    fn neg(&self) -> Self {
        FloatScalar::new(-self.value, self.eps)
    }

    fn conj(&self) -> Self {
        FloatScalar::new(self.value.conj(), self.eps)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(FloatScalar::new(self.value.inv(), self.eps))
        }
    }

    fn is_zero(&self) -> bool {
        self.value.norm() <= self.eps
    }

    fn approx_eq(&self, other: &Self) -> bool {
        let eps = self.eps.max(other.eps);
        let scale = 1f64.max(self.value.norm()).max(other.value.norm());
        (self.value - other.value).norm() <= eps * scale
    }

    fn to_c64(&self) -> Complex64 {
        self.value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_comparison() {
        let a = FloatScalar::real(1e6, 1e-9);
        let b = FloatScalar::real(1e6 + 1e-4, 1e-9);
        assert!(a.approx_eq(&b));
        let c = FloatScalar::real(1e-6, 1e-9);
        let d = FloatScalar::real(2e-6, 1e-9);
        assert!(!c.approx_eq(&d));
    }

    #[test]
    fn tolerance_propagates_from_data() {
        let h = FloatScalar::real(std::f64::consts::FRAC_1_SQRT_2, DEFAULT_EPS);
        let half = h.mul(&h);
        assert!(half.sub(&FloatScalar::real(0.5, 0.0)).is_zero());
        assert_eq!(FloatScalar::one().add(&h).eps, DEFAULT_EPS);
    }
}
