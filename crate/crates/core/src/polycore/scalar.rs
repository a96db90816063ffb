//! Exact scalar fields.
//!
//! Two fields are supported: the rationals and the quadratic extension
//! Q(√2). Both are exact; conversion to `f64` lives on the separate
//! [`ToFloat`] trait so that code which must stay exact can simply not
//! require it.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::quad::QuadScalar;
use super::AlgebraError;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Which scalar field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarField {
    Rational,
    Quadratic,
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Rational => f.write_str("Q"),
            ScalarField::Quadratic => f.write_str("Q(sqrt2)"),
        }
    }
}

/// An exact field element.
///
/// The `*_ref` methods exist so that hot loops (convolution, Horner) do not
/// have to clone big integers just to satisfy by-value operator traits.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const FIELD: ScalarField;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Rational parts of the value: `(coefficient, carries_sqrt2)`, zero
    /// parts omitted. Used by the polynomial printer.
    fn literal_parts(&self) -> Vec<(Rational, bool)>;

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, AlgebraError>;
}

/// Lossy conversion to binary floating point. Kept apart from [`Scalar`] so
/// that exact code paths cannot reach it through a generic bound.
pub trait ToFloat {
    fn to_float(&self) -> f64;
}

impl Scalar for Rational {
    const FIELD: ScalarField = ScalarField::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn literal_parts(&self) -> Vec<(Rational, bool)> {
        if Zero::is_zero(self) {
            vec![]
        } else {
            vec![(self.clone(), false)]
        }
    }
    fn to_json(&self) -> Value {
        rational_to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        rational_from_json(v)
    }
}

impl ToFloat for Rational {
    fn to_float(&self) -> f64 {
        // BigRational::to_f64 handles huge numerators/denominators without
        // overflowing the intermediate conversions.
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Canonical encoding: `["num","den"]` as decimal strings.
pub fn rational_to_json(r: &Rational) -> Value {
    json!([r.numer().to_string(), r.denom().to_string()])
}

pub fn rational_from_json(v: &Value) -> Result<Rational, AlgebraError> {
    let bad = || AlgebraError::Json(format!("expected [\"num\",\"den\"], got {v}"));
    let arr = v.as_array().ok_or_else(bad)?;
    if arr.len() != 2 {
        return Err(bad());
    }
    let num = parse_decimal(arr[0].as_str().ok_or_else(bad)?)?;
    let den = parse_decimal(arr[1].as_str().ok_or_else(bad)?)?;
    if !den.is_positive() {
        return Err(AlgebraError::Json(format!("non-positive denominator in {v}")));
    }
    Ok(Rational::new(num, den))
}

/// Decimal integer with optional leading `-`; no `+`, no exponent.
fn parse_decimal(s: &str) -> Result<BigInt, AlgebraError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(AlgebraError::Json(format!("not a decimal integer: {s:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|e| AlgebraError::Json(format!("{s:?}: {e}")))
}

/// Shorthand for `a/b` as a [`Rational`]. Panics on `b == 0`.
pub fn rat(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

/// Shorthand for an integer-valued [`Rational`].
pub fn int(a: i64) -> Rational {
    Rational::from_integer(BigInt::from(a))
}

impl ToFloat for QuadScalar {
    fn to_float(&self) -> f64 {
        self.a().to_float() + self.b().to_float() * std::f64::consts::SQRT_2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_json_is_canonical() {
        let r = rat(6, -4);
        assert_eq!(r.to_json(), json!(["-3", "2"]));
        assert_eq!(Rational::from_json(&json!(["-3", "2"])).unwrap(), r);
        assert_eq!(Rational::from_json(&json!(["6", "4"])).unwrap(), rat(3, 2));
    }

    #[test]
    fn rational_json_rejects_noise() {
        for bad in [
            json!(["1e3", "1"]),
            json!(["+1", "1"]),
            json!(["1", "0"]),
            json!(["1", "-2"]),
            json!([1, 2]),
            json!(["1"]),
        ] {
            assert!(Rational::from_json(&bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(Scalar::inv(&int(0)).is_none());
        assert_eq!(Scalar::inv(&rat(-2, 3)).unwrap(), rat(-3, 2));
    }
}
