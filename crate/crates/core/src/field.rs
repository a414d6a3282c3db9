//! The scalar field abstraction shared by the exact and tolerant arithmetic modes.

use std::fmt;

use num::complex::Complex64;

/// A field of (possibly complex) scalars with a decidable zero test.
///
/// [`Scalar`](crate::Scalar) is exact; [`FloatScalar`](crate::FloatScalar)
/// decides equality up to a relative tolerance.
pub trait Field: Clone + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// `true` when equality and zero tests are exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn is_zero(&self) -> bool;

    /// Equality under the field's comparison rule.
    fn approx_eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Modulus as a float; used for pivot selection and reporting only.
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    fn to_c64(&self) -> Complex64;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    /// `|self|^2` as a field element with zero imaginary part.
    fn norm_sqr(&self) -> Self {
        self.mul(&self.conj())
    }
}

/// Hermitian inner product `<a, b> = sum conj(a_i) b_i`.
pub fn inner<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc.add(&x.conj().mul(y)))
}

pub fn is_zero_vector<F: Field>(v: &[F]) -> bool {
    v.iter().all(Field::is_zero)
}
