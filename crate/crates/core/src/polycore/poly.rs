use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;
use serde_json::{json, Value};

use super::quad::QuadScalar;
use super::scalar::{Rational, Scalar, ScalarField, ToFloat};
use super::AlgebraError;

/// Dense univariate polynomial, coefficients in ascending degree with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn x() -> Self {
        Self::monomial(S::one(), 1)
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    /// `None` stands for degree −∞ (the zero polynomial).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly<S>) -> Poly<S> {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    /// `self(c·x)`: cheaper than a general composition.
    pub fn scale_arg(&self, c: &S) -> Poly<S> {
        let mut pow = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul_ref(&pow));
            pow = pow.mul_ref(c);
        }
        Poly::new(out)
    }

    /// k-th formal derivative.
    pub fn derivative(&self, k: usize) -> Poly<S> {
        if k == 0 {
            return self.clone();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(k)
            .map(|(i, c)| {
                // falling factorial i·(i−1)···(i−k+1)
                let ff: i64 = ((i - k + 1)..=i).map(|j| j as i64).product();
                c.mul_ref(&S::from_i64(ff))
            })
            .collect();
        Poly::new(out)
    }

    /// Euclidean division over the field.
    pub fn div_rem(&self, d: &Poly<S>) -> Result<(Poly<S>, Poly<S>), AlgebraError> {
        let dd = d.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead_inv = d.coeffs[dd].inv().ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = rem[i + dd].mul_ref(&lead_inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].sub_ref(&c.mul_ref(dc));
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// True when every nonzero coefficient sits at a degree ≡ `parity` (mod 2).
    pub fn has_parity(&self, parity: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % 2 == parity % 2 || c.is_zero())
    }

    pub fn to_json(&self) -> Value {
        json!({ "coeffs": self.coeffs.iter().map(Scalar::to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let arr = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| AlgebraError::Json(format!("expected {{\"coeffs\": [...]}}, got {v}")))?;
        let coeffs = arr.iter().map(S::from_json).collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }

    /// Printable with an explicit variable name, descending degree.
    pub fn display_var<'a>(&'a self, var: &'a str) -> PolyDisplay<'a, S> {
        PolyDisplay { poly: self, var }
    }
}

impl<S: Scalar + ToFloat> Poly<S> {
    /// Floating-point evaluation after rounding every coefficient.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_float())
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(ToFloat::to_float).collect()
    }
}

impl Poly<Rational> {
    /// Embed into Q(√2)[x].
    pub fn promote(&self) -> Poly<QuadScalar> {
        Poly::new(self.coeffs.iter().cloned().map(QuadScalar::from).collect())
    }
}

impl Poly<QuadScalar> {
    /// Back to Q[x] when no coefficient carries √2.
    pub fn to_rational(&self) -> Option<Poly<Rational>> {
        self.coeffs
            .iter()
            .map(|c| c.is_rational().then(|| c.a().clone()))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }
}

impl<'a, S: Scalar> Add<&'a Poly<S>> for &'a Poly<S> {
    type Output = Poly<S>;
    fn add(self, o: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = S::zero();
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = o.coeffs.get(i).unwrap_or(&zero);
                    a.add_ref(b)
                })
                .collect(),
        )
    }
}

impl<'a, S: Scalar> Sub<&'a Poly<S>> for &'a Poly<S> {
    type Output = Poly<S>;
    fn sub(self, o: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = S::zero();
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = o.coeffs.get(i).unwrap_or(&zero);
                    a.sub_ref(b)
                })
                .collect(),
        )
    }
}

impl<'a, S: Scalar> Mul<&'a Poly<S>> for &'a Poly<S> {
    type Output = Poly<S>;
    fn mul(self, o: &Poly<S>) -> Poly<S> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(out)
    }
}

impl<S: Scalar> Add for Poly<S> {
    type Output = Poly<S>;
    fn add(self, o: Poly<S>) -> Poly<S> {
        &self + &o
    }
}

impl<S: Scalar> Sub for Poly<S> {
    type Output = Poly<S>;
    fn sub(self, o: Poly<S>) -> Poly<S> {
        &self - &o
    }
}

impl<S: Scalar> Mul for Poly<S> {
    type Output = Poly<S>;
    fn mul(self, o: Poly<S>) -> Poly<S> {
        &self * &o
    }
}

impl<S: Scalar> Neg for Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly {
            coeffs: self.coeffs.into_iter().map(Neg::neg).collect(),
        }
    }
}

pub struct PolyDisplay<'a, S> {
    poly: &'a Poly<S>,
    var: &'a str,
}

impl<S: Scalar> fmt::Display for PolyDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.poly.coeffs.iter().enumerate().rev() {
            for (r, surd) in c.literal_parts() {
                let neg = r.is_negative();
                let mag = r.abs();
                match (first, neg) {
                    (true, true) => f.write_str("-")?,
                    (true, false) => {}
                    (false, true) => f.write_str(" - ")?,
                    (false, false) => f.write_str(" + ")?,
                }
                first = false;
                write_term(f, &mag, surd, k, self.var)?;
            }
        }
        Ok(())
    }
}

/// One monomial with a nonnegative rational magnitude, e.g. `3x^2`,
/// `1/2*x`, `s2*x^3`, `5`.
fn write_term(
    f: &mut fmt::Formatter<'_>,
    mag: &Rational,
    surd: bool,
    k: usize,
    var: &str,
) -> fmt::Result {
    let unit = mag.is_one();
    let mut parts: Vec<String> = Vec::new();
    if !unit || (k == 0 && !surd) {
        parts.push(mag.to_string());
    }
    if surd {
        parts.push("s2".to_string());
    }
    if k > 0 {
        let v = if k == 1 {
            var.to_string()
        } else {
            format!("{var}^{k}")
        };
        // integers read fine juxtaposed (3x^2); fractions and s2 get a `*`
        if parts.len() == 1 && !surd && mag.is_integer() {
            let c = parts.pop().unwrap_or_default();
            parts.push(format!("{c}{v}"));
        } else {
            parts.push(v);
        }
    }
    f.write_str(&parts.join("*"))
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.display_var("x"), f)
    }
}

/// Arithmetic operator selector for [`DynPoly::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial whose scalar field is only known at run time (parsed input,
/// JSON). Mixing fields is an error unless promoted explicitly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DynPoly {
    Rational(Poly<Rational>),
    Quadratic(Poly<QuadScalar>),
}

impl DynPoly {
    pub fn field(&self) -> ScalarField {
        match self {
            DynPoly::Rational(_) => ScalarField::Rational,
            DynPoly::Quadratic(_) => ScalarField::Quadratic,
        }
    }

    pub fn promote(&self) -> Poly<QuadScalar> {
        match self {
            DynPoly::Rational(p) => p.promote(),
            DynPoly::Quadratic(p) => p.clone(),
        }
    }

    /// Demote to Q[x] when possible.
    pub fn narrow(p: Poly<QuadScalar>) -> DynPoly {
        match p.to_rational() {
            Some(r) => DynPoly::Rational(r),
            None => DynPoly::Quadratic(p),
        }
    }

    pub fn arith(&self, other: &DynPoly, op: PolyOp) -> Result<DynPoly, AlgebraError> {
        fn apply<S: Scalar>(a: &Poly<S>, b: &Poly<S>, op: PolyOp) -> Poly<S> {
            match op {
                PolyOp::Add => a + b,
                PolyOp::Sub => a - b,
                PolyOp::Mul => a * b,
            }
        }
        match (self, other) {
            (DynPoly::Rational(a), DynPoly::Rational(b)) => Ok(DynPoly::Rational(apply(a, b, op))),
            (DynPoly::Quadratic(a), DynPoly::Quadratic(b)) => {
                Ok(DynPoly::Quadratic(apply(a, b, op)))
            }
            (a, b) => Err(AlgebraError::MixedFields(a.field(), b.field())),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            DynPoly::Rational(p) => p.to_json(),
            DynPoly::Quadratic(p) => p.to_json(),
        }
    }
}

impl fmt::Display for DynPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynPoly::Rational(p) => p.fmt(f),
            DynPoly::Quadratic(p) => p.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::{int, rat};
    use proptest::prelude::*;

    type P = Poly<Rational>;

    fn p(cs: &[i64]) -> P {
        P::from_i64s(cs)
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((-9i64..10, 1i64..4), 0..6)
            .prop_map(|v| P::new(v.into_iter().map(|(a, b)| rat(a, b)).collect()))
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-12i64..13, 1i64..7).prop_map(|(a, b)| rat(a, b))
    }

    #[test]
    fn zero_has_no_coeffs_and_no_degree() {
        let z = p(&[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn monomial_product() {
        assert_eq!(&P::x() * &P::x(), p(&[0, 0, 1]));
    }

    #[test]
    fn self_cancellation() {
        let b2 = p(&[2, 0, 1]);
        assert!((&b2 - &b2).is_zero());
    }

    #[test]
    fn recurrence_step_by_hand() {
        // B3 = x^3 + x, B2 = x^2 + 2: x·B3 − B2 = x^4 − 2
        let b3 = p(&[0, 1, 0, 1]);
        let b2 = p(&[2, 0, 1]);
        assert_eq!(&(&P::x() * &b3) - &b2, p(&[-2, 0, 0, 0, 1]));
    }

    #[test]
    fn evaluation_at_zero() {
        assert_eq!(p(&[2, 0, 1]).eval(&int(0)), int(2));
        assert_eq!(p(&[-2, 0, 0, 0, 1]).eval(&int(0)), int(-2));
        assert_eq!(p(&[7, 3, 5]).eval(&int(0)), int(7));
    }

    #[test]
    fn composition_examples() {
        let b2 = p(&[2, 0, 1]);
        assert_eq!(b2.compose(&P::x()), b2);
        assert_eq!(b2.compose(&p(&[0, 2])), p(&[2, 0, 4]));
        assert_eq!(b2.scale_arg(&int(2)), p(&[2, 0, 4]));
        // U2 = 4x^2 − 1 at x/2 gives x^2 − 1
        let u2 = p(&[-1, 0, 4]);
        let half = P::new(vec![int(0), rat(1, 2)]);
        assert_eq!(u2.compose(&half), p(&[-1, 0, 1]));
    }

    #[test]
    fn composition_degree() {
        let a = p(&[1, 2, 0, 3]);
        let b = p(&[0, 1, 1]);
        assert_eq!(a.compose(&b).degree(), Some(6));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p(&[2, 0, 1]).derivative(1), p(&[0, 2]));
        assert!(p(&[5]).derivative(1).is_zero());
        let b4 = p(&[-2, 0, 0, 0, 1]);
        assert_eq!(b4.derivative(2).eval(&int(0)), int(0));
        assert_eq!(b4.derivative(4), p(&[24]));
        assert!(b4.derivative(5).is_zero());
    }

    #[test]
    fn division_with_remainder() {
        let a = p(&[-1, 0, 0, 1]);
        let (q, r) = a.div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(matches!(a.div_rem(&P::zero()), Err(AlgebraError::DivisionByZero)));
    }

    #[test]
    fn printer() {
        assert_eq!(p(&[1, 0, -3, 0, 1]).to_string(), "x^4 - 3x^2 + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(P::new(vec![rat(1, 2), int(0), rat(-1, 2)]).to_string(), "-1/2*x^2 + 1/2");
        let q = Poly::new(vec![QuadScalar::new(int(1), int(-2)), QuadScalar::sqrt2()]);
        assert_eq!(q.to_string(), "s2*x + 1 - 2*s2");
        assert_eq!(p(&[1, 1]).display_var("t").to_string(), "t + 1");
    }

    #[test]
    fn json_shape() {
        let v = p(&[2, 0, 1]).to_json();
        assert_eq!(v, json!({"coeffs": [["2","1"],["0","1"],["1","1"]]}));
        assert_eq!(P::from_json(&v).unwrap(), p(&[2, 0, 1]));
    }

    #[test]
    fn mixed_fields_rejected_without_promotion() {
        let r = DynPoly::Rational(p(&[1, 1]));
        let q = DynPoly::Quadratic(Poly::new(vec![QuadScalar::sqrt2()]));
        assert!(matches!(
            r.arith(&q, PolyOp::Add),
            Err(AlgebraError::MixedFields(ScalarField::Rational, ScalarField::Quadratic))
        ));
        let promoted = DynPoly::Quadratic(r.promote());
        let sum = promoted.arith(&q, PolyOp::Mul).unwrap();
        assert_eq!(sum.field(), ScalarField::Quadratic);
    }

    proptest! {
        #[test]
        fn eval_is_ring_hom(a in arb_poly(), b in arb_poly(), x in arb_rat()) {
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }

        #[test]
        fn eval_of_composition(a in arb_poly(), b in arb_poly(), x in arb_rat()) {
            prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
        }

        #[test]
        fn product_rule(a in arb_poly(), b in arb_poly()) {
            let lhs = (&a * &b).derivative(1);
            let rhs = &(&a.derivative(1) * &b) + &(&a * &b.derivative(1));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn div_rem_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }
    }
}
