use super::poly::Poly;
use super::quad::QuadScalar;
use super::scalar::{Rational, Scalar};
use super::AlgebraError;

/// Truncated formal power series: coefficients of `x^0..=x^order`, all of
/// them known exactly. Nothing is claimed about higher coefficients, so
/// every binary operation yields the smaller of the two orders.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Series<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Series<S> {
    /// Pads with zeros or truncates `coeffs` to exactly `order + 1` terms.
    pub fn new(mut coeffs: Vec<S>, order: usize) -> Self {
        coeffs.resize(order + 1, S::zero());
        Series { coeffs }
    }

    pub fn from_poly(p: &Poly<S>, order: usize) -> Self {
        Self::new(p.coeffs().iter().take(order + 1).cloned().collect(), order)
    }

    pub fn constant(c: S, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(S::one(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `x^n`, or `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&S> {
        self.coeffs.get(n)
    }

    /// Same series at a lower order. Raising the order is not possible.
    pub fn truncate(&self, order: usize) -> Self {
        Series {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn to_poly(&self) -> Poly<S> {
        Poly::new(self.coeffs.clone())
    }

    /// Index of the first nonzero coefficient, `None` if all known ones are zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series {
            coeffs: (0..=n).map(|i| self.coeffs[i].add_ref(&o.coeffs[i])).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series {
            coeffs: (0..=n).map(|i| self.coeffs[i].sub_ref(&o.coeffs[i])).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![S::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, c: &S) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    /// Multiply by `x^k`. The order is unchanged: the top coefficients of the
    /// result only need lower coefficients of `self`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![S::zero(); k.min(n + 1)];
        coeffs.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        Series { coeffs }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Series::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse through the same order.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let c0_inv = self.coeffs[0].inv().ok_or(AlgebraError::NotInvertible)?;
        let n = self.order();
        let mut out: Vec<S> = Vec::with_capacity(n + 1);
        out.push(c0_inv.clone());
        for m in 1..=n {
            // s0·t_m = −Σ_{i=1..m} s_i·t_{m−i}
            let mut acc = S::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    acc = acc.add_ref(&self.coeffs[i].mul_ref(&out[m - i]));
                }
            }
            out.push((-acc).mul_ref(&c0_inv));
        }
        Ok(Series { coeffs: out })
    }

    /// `self(inner(x))`; needs `inner(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self, AlgebraError> {
        if !inner.coeffs[0].is_zero() {
            return Err(AlgebraError::CompositionUndefined);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Series::constant(self.coeffs[n].clone(), n);
        for c in self.coeffs[..n].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].add_ref(c);
        }
        Ok(acc)
    }
}

impl Series<Rational> {
    pub fn promote(&self) -> Series<QuadScalar> {
        Series {
            coeffs: self.coeffs.iter().cloned().map(QuadScalar::from).collect(),
        }
    }
}
