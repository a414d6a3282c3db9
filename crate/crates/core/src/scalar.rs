//! Exact complex-rational scalars.
//!
//! A [`Scalar`] is `re + im·i` with both parts arbitrary-precision reduced
//! fractions, so structural equality is value equality. The textual form is
//! `p/q` for rationals and `p/q+r/si` for complex values; integers drop the
//! `/1`. Parsing additionally accepts exact decimals (`0.25`, `1e-3`) and
//! pure imaginaries (`i`, `-3/2i`).

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::complex::{Complex, Complex64};
use num::rational::BigRational;
use num::traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar(Complex<BigRational>);

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar(Complex::new(re, im))
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar::new(re, BigRational::zero())
    }

    pub fn from_integer(v: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// `numer/denom`, panicking on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Scalar::from_rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        Scalar::new(BigRational::new(re.0.into(), re.1.into()), BigRational::new(im.0.into(), im.1.into()))
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.0.re, f)?;
        if !self.0.im.is_zero() {
            f.write_str(if self.0.im.is_negative() { "-" } else { "+" })?;
            fmt_rational(&self.0.im.abs(), f)?;
            f.write_str("i")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p`, `p/q`, or an exact decimal with optional exponent.
pub(crate) fn parse_rational(text: &str) -> Option<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = parse_int(n.trim())?;
        let d: BigInt = parse_int(d.trim())?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(all);
    if shift >= 0 {
        value *= BigRational::from_integer(Pow::pow(&ten, shift as u32));
    } else {
        value /= BigRational::from_integer(Pow::pow(&ten, (-shift) as u32));
    }
    Some(if negative { -value } else { value })
}

fn parse_int(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_imag_coeff(s: &str) -> Option<BigRational> {
    match s.trim() {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        t => parse_rational(t),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidScalar(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational(&s).map(Scalar::from_rational).ok_or_else(bad);
        };
        // Split at the last sign that is neither leading nor part of an exponent.
        let bytes = body.as_bytes();
        let split =
            (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        match split {
            Some(k) => {
                let re = parse_rational(&body[..k]).ok_or_else(bad)?;
                let im = parse_imag_coeff(&body[k..]).ok_or_else(bad)?;
                Ok(Scalar::new(re, im))
            }
            None => {
                let im = parse_imag_coeff(body).ok_or_else(bad)?;
                Ok(Scalar::new(BigRational::zero(), im))
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct ScalarVisitor;

impl Visitor<'_> for ScalarVisitor {
    type Value = Scalar;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a scalar string such as \"1/2\" or \"1/2-3i\", or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
        Ok(Scalar::from_integer(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
        Ok(Scalar::from_rational(BigRational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Scalar, E> {
        // Shortest round-trip decimal, read back exactly.
        v.to_string().parse().map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(ScalarVisitor)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Field for Scalar {
    const EXACT: bool = true;

    fn zero() -> Self {
        Scalar(Complex::zero())
    }

    fn one() -> Self {
        Scalar(Complex::one())
    }

    fn from_i64(v: i64) -> Self {
        Scalar::from_integer(v)
    }

    fn add(&self, rhs: &Self) -> Self {
        Scalar(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Scalar(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Scalar(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Scalar(-&self.0)
    }

    fn conj(&self) -> Self {
        Scalar(self.0.conj())
    }

    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            return None;
        }
        let n = self.0.norm_sqr();
        Some(Scalar(Complex::new(&self.0.re / &n, -&self.0.im / &n)))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.0.re), rational_to_f64(&self.0.im))
    }

    fn norm_sqr(&self) -> Self {
        Scalar::from_rational(self.0.norm_sqr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!(s("3"), Scalar::from_integer(3));
        assert_eq!(s("-6/4"), Scalar::ratio(-3, 2));
        assert_eq!(s("0.25"), Scalar::ratio(1, 4));
        assert_eq!(s("-1.5e2"), Scalar::from_integer(-150));
        assert_eq!(s("2.5E-1"), Scalar::ratio(1, 4));
        assert_eq!(s(".5"), Scalar::ratio(1, 2));
    }

    #[test]
    fn parses_complex_forms() {
        assert_eq!(s("1/2+3/4i"), Scalar::complex((1, 2), (3, 4)));
        assert_eq!(s("1-i"), Scalar::complex((1, 1), (-1, 1)));
        assert_eq!(s("i"), Scalar::complex((0, 1), (1, 1)));
        assert_eq!(s("-2/3i"), Scalar::complex((0, 1), (-2, 3)));
        assert_eq!(s("1e-1+1e-1i"), Scalar::complex((1, 10), (1, 10)));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "abc", "1/2/3", "--1", "1+", "e5", "."] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn canonical_display() {
        assert_eq!(Scalar::ratio(4, -6).to_string(), "-2/3");
        assert_eq!(Scalar::from_integer(5).to_string(), "5");
        assert_eq!(Scalar::complex((1, 2), (-3, 4)).to_string(), "1/2-3/4i");
        assert_eq!(Scalar::complex((0, 1), (1, 1)).to_string(), "0+1i");
    }

    #[test]
    fn inverse_is_exact() {
        let z = Scalar::complex((1, 1), (2, 1));
        assert_eq!(z.mul(&z.inv().unwrap()), Scalar::one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn serde_accepts_strings_and_integers() {
        use serde::de::value::{Error as DeError, I64Deserializer, StrDeserializer};
        use serde::de::IntoDeserializer;
        let from_str: StrDeserializer<DeError> = "1/2+i".into_deserializer();
        assert_eq!(Scalar::deserialize(from_str).unwrap(), Scalar::complex((1, 2), (1, 1)));
        let from_int: I64Deserializer<DeError> = 7i64.into_deserializer();
        assert_eq!(Scalar::deserialize(from_int).unwrap(), Scalar::from_integer(7));
    }

    proptest::proptest! {
        #[test]
        fn display_parse_round_trip(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
            let z = Scalar::complex((a, b), (c, d));
            proptest::prop_assert_eq!(z.to_string().parse::<Scalar>().unwrap(), z);
        }
    }
}
