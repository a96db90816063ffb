use crate::families::{FamilyCache, FamilySpec};
use crate::polycore::{Poly, QuadScalar, Scalar};

use super::IdentityError;

type Q = QuadScalar;

/// Affine index `n·n_coeff + k·k_coeff + offset`, where `n` is the running
/// index and `k` the innermost summation variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexExpr {
    pub n_coeff: i64,
    pub k_coeff: i64,
    pub offset: i64,
}

impl IndexExpr {
    pub const fn new(n_coeff: i64, k_coeff: i64, offset: i64) -> Self {
        IndexExpr { n_coeff, k_coeff, offset }
    }

    /// `n + offset`.
    pub const fn n(offset: i64) -> Self {
        Self::new(1, 0, offset)
    }

    pub const fn constant(c: i64) -> Self {
        Self::new(0, 0, c)
    }

    pub const fn negate(self) -> Self {
        Self::new(-self.n_coeff, -self.k_coeff, -self.offset)
    }

    pub fn eval(&self, n: i64, k: Option<i64>) -> Result<i64, IdentityError> {
        let k_part = match (self.k_coeff, k) {
            (0, _) => 0,
            (c, Some(k)) => c * k,
            (_, None) => return Err(IdentityError::UnboundSumIndex),
        };
        Ok(self.n_coeff * n + k_part + self.offset)
    }
}

/// What a term does when its family index falls below the family's domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BelowDomain {
    #[default]
    Error,
    /// The term contributes the zero polynomial.
    Zero,
}

/// `weight · base^exponent · family(index)(scale·x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub weight: Q,
    pub power: Option<(Q, IndexExpr)>,
    pub family: FamilySpec,
    pub index: IndexExpr,
    pub scale: Q,
    pub below_domain: BelowDomain,
}

impl Term {
    pub fn new(family: FamilySpec, index: IndexExpr) -> Self {
        Term {
            weight: Q::one(),
            power: None,
            family,
            index,
            scale: Q::one(),
            below_domain: BelowDomain::Error,
        }
    }

    pub fn weight(mut self, w: Q) -> Self {
        self.weight = w;
        self
    }

    pub fn scale(mut self, s: Q) -> Self {
        self.scale = s;
        self
    }

    pub fn power(mut self, base: Q, exponent: IndexExpr) -> Self {
        self.power = Some((base, exponent));
        self
    }

    pub fn zero_below_domain(mut self) -> Self {
        self.below_domain = BelowDomain::Zero;
        self
    }

    fn eval(&self, n: i64, k: Option<i64>, cache: &FamilyCache) -> Result<Poly<Q>, IdentityError> {
        let idx = self.index.eval(n, k)?;
        let min = self.family.min_index();
        if idx < min as i64 {
            return match self.below_domain {
                BelowDomain::Zero => Ok(Poly::zero()),
                BelowDomain::Error => Err(IdentityError::IndexBelowDomain {
                    family: self.family.id().to_string(),
                    n: idx,
                    min,
                }),
            };
        }
        let mut poly = cache.get(&self.family, idx as usize)?.promote();
        if !self.scale.is_one() {
            poly = poly.scale_arg(&self.scale);
        }
        let mut w = self.weight.clone();
        if let Some((base, e)) = &self.power {
            w = w.mul_ref(&base.powi(e.eval(n, k)?)?);
        }
        Ok(poly.scale(&w))
    }
}

/// Expression over family terms, evaluated at a running index `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Term(Term),
    Const(Poly<Q>),
    /// `Σ_{k=lo}^{hi} body`; empty when `hi < lo`. Binds `k` inside `body`.
    Sum {
        lo: IndexExpr,
        hi: IndexExpr,
        body: Box<Expr>,
    },
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
}

impl From<Term> for Expr {
    fn from(t: Term) -> Self {
        Expr::Term(t)
    }
}

impl Expr {
    pub fn zero() -> Self {
        Expr::Add(Vec::new())
    }

    pub fn sum(lo: IndexExpr, hi: IndexExpr, body: impl Into<Expr>) -> Self {
        Expr::Sum {
            lo,
            hi,
            body: Box::new(body.into()),
        }
    }

    pub fn eval(&self, n: i64, cache: &FamilyCache) -> Result<Poly<Q>, IdentityError> {
        self.eval_in(n, None, cache)
    }

    fn eval_in(&self, n: i64, k: Option<i64>, cache: &FamilyCache) -> Result<Poly<Q>, IdentityError> {
        match self {
            Expr::Term(t) => t.eval(n, k, cache),
            Expr::Const(p) => Ok(p.clone()),
            Expr::Sum { lo, hi, body } => {
                let (lo, hi) = (lo.eval(n, k)?, hi.eval(n, k)?);
                let mut acc = Poly::zero();
                for j in lo..=hi {
                    acc = &acc + &body.eval_in(n, Some(j), cache)?;
                }
                Ok(acc)
            }
            Expr::Add(parts) => parts.iter().try_fold(Poly::zero(), |acc, e| {
                Ok(&acc + &e.eval_in(n, k, cache)?)
            }),
            Expr::Mul(parts) => parts.iter().try_fold(Poly::one(), |acc, e| {
                Ok(&acc * &e.eval_in(n, k, cache)?)
            }),
        }
    }
}
