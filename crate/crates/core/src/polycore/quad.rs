use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use super::scalar::{int, rational_from_json, rational_to_json, Rational, Scalar, ScalarField};
use super::AlgebraError;

/// An element `a + b·√2` of Q(√2).
///
/// Since √2 is irrational the representation is unique, so equality is
/// componentwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadScalar { a, b }
    }

    /// √2 itself.
    pub fn sqrt2() -> Self {
        QuadScalar::new(Scalar::zero(), Scalar::one())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `a − b√2`; a field automorphism of Q(√2).
    pub fn conj(&self) -> Self {
        QuadScalar::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − 2b²`, which is zero only for the zero element.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(2) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn powi(&self, e: i64) -> Result<Self, AlgebraError> {
        let base = if e < 0 {
            Scalar::inv(self).ok_or(AlgebraError::NotInvertible)?
        } else {
            self.clone()
        };
        let mut exp = e.unsigned_abs();
        let mut acc = QuadScalar::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            sq = sq.mul_ref(&sq);
            exp >>= 1;
        }
        Ok(acc)
    }
}

impl From<Rational> for QuadScalar {
    fn from(r: Rational) -> Self {
        QuadScalar::new(r, Scalar::zero())
    }
}

impl Scalar for QuadScalar {
    const FIELD: ScalarField = ScalarField::Quadratic;

    fn zero() -> Self {
        QuadScalar::new(Scalar::zero(), Scalar::zero())
    }
    fn one() -> Self {
        QuadScalar::new(Scalar::one(), Scalar::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_rational(r: Rational) -> Self {
        r.into()
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadScalar::new(&self.a / &n, -(&self.b / &n)))
    }
    fn add_ref(&self, o: &Self) -> Self {
        QuadScalar::new(&self.a + &o.a, &self.b + &o.b)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        QuadScalar::new(&self.a - &o.a, &self.b - &o.b)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        // (a+b√2)(c+d√2) = (ac+2bd) + (ad+bc)√2
        let ac = &self.a * &o.a;
        let bd = &self.b * &o.b;
        let ad = &self.a * &o.b;
        let bc = &self.b * &o.a;
        QuadScalar::new(ac + int(2) * bd, ad + bc)
    }
    fn literal_parts(&self) -> Vec<(Rational, bool)> {
        let mut parts = Vec::new();
        if !self.a.is_zero() {
            parts.push((self.a.clone(), false));
        }
        if !self.b.is_zero() {
            parts.push((self.b.clone(), true));
        }
        parts
    }
    fn to_json(&self) -> Value {
        json!({"a": rational_to_json(&self.a), "b": rational_to_json(&self.b)})
    }
    fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let obj = v
            .as_object()
            .ok_or_else(|| AlgebraError::Json(format!("expected {{\"a\",\"b\"}}, got {v}")))?;
        let get = |k: &str| {
            obj.get(k)
                .ok_or_else(|| AlgebraError::Json(format!("missing field {k:?} in {v}")))
                .and_then(rational_from_json)
        };
        Ok(QuadScalar::new(get("a")?, get("b")?))
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = <Rational as Scalar>::one();
        let surd = |b: &Rational| if *b == one { "s2".to_string() } else { format!("{b}*s2") };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b == -one.clone() => write!(f, "-s2"),
            (true, false) => write!(f, "{}", surd(&self.b)),
            (false, false) => {
                if self.b < <Rational as Scalar>::zero() {
                    write!(f, "{} - {}", self.a, surd(&-self.b.clone()))
                } else {
                    write!(f, "{} + {}", self.a, surd(&self.b))
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $r:ident) => {
        impl $tr for QuadScalar {
            type Output = QuadScalar;
            fn $m(self, o: QuadScalar) -> QuadScalar {
                self.$r(&o)
            }
        }
        impl<'a> $tr<&'a QuadScalar> for &'a QuadScalar {
            type Output = QuadScalar;
            fn $m(self, o: &QuadScalar) -> QuadScalar {
                self.$r(o)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar::new(-self.a, -self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::rat;
    use proptest::prelude::*;

    fn q(a: (i64, i64), b: (i64, i64)) -> QuadScalar {
        QuadScalar::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    fn arb_quad() -> impl Strategy<Value = QuadScalar> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, da, b, db)| q((a, da), (b, db)))
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = QuadScalar::sqrt2();
        assert_eq!(&s * &s, QuadScalar::from(int(2)));
    }

    #[test]
    fn product_formula() {
        // (1+2√2)(3−√2) = 3 − 4 + (−1 + 6)√2 = −1 + 5√2
        assert_eq!(q((1, 1), (2, 1)) * q((3, 1), (-1, 1)), q((-1, 1), (5, 1)));
    }

    #[test]
    fn negative_powers() {
        let s = QuadScalar::sqrt2();
        assert_eq!(s.powi(-2).unwrap(), QuadScalar::from(rat(1, 2)));
        assert_eq!(s.powi(-3).unwrap(), q((0, 1), (1, 4)));
        assert_eq!(s.powi(0).unwrap(), QuadScalar::one());
        assert!(QuadScalar::zero().powi(-1).is_err());
    }

    #[test]
    fn json_shape() {
        let v = q((1, 2), (-3, 1)).to_json();
        assert_eq!(v, json!({"a": ["1", "2"], "b": ["-3", "1"]}));
        assert_eq!(QuadScalar::from_json(&v).unwrap(), q((1, 2), (-3, 1)));
    }

    proptest! {
        #[test]
        fn associative(u in arb_quad(), v in arb_quad(), w in arb_quad()) {
            prop_assert_eq!((&u * &v) * w.clone(), &u * &(&v * &w));
        }

        #[test]
        fn inverse_round_trip(u in arb_quad()) {
            prop_assume!(!u.is_zero());
            prop_assert_eq!(&u * &u.inv().unwrap(), QuadScalar::one());
        }

        #[test]
        fn conjugation_is_ring_hom(u in arb_quad(), v in arb_quad()) {
            prop_assert_eq!((&u * &v).conj(), &u.conj() * &v.conj());
            prop_assert_eq!((&u + &v).conj(), &u.conj() + &v.conj());
        }

        #[test]
        fn zero_iff_components_zero(u in arb_quad()) {
            prop_assert_eq!(u.is_zero(), u.a().is_zero() && u.b().is_zero());
            prop_assert_eq!(u.norm().is_zero(), u.is_zero());
        }
    }
}
