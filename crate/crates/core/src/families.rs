//! Polynomial families: Boubaker (three constructions), Chebyshev `T`, `U`
//! and the `T̃` normalization, `B̃`, the S-class, Fermat, general Lucas
//! sequences, and row polynomials of an arbitrary rational Riordan array.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::polycore::{int, rat, Poly, Rational, Scalar};
use crate::riordan::{RiordanArray, RiordanError};

type P = Poly<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family}: index {n} is below the family's first index {min}")]
    IndexBelowDomain { family: String, n: i64, min: usize },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Riordan(#[from] RiordanError),
}

/// Two-term recurrence `P_n = p·P_{n−1} + q·P_{n−2}` with seeds at
/// `start` and `start + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LucasParams {
    pub p: P,
    pub q: P,
    pub seed0: P,
    pub seed1: P,
    pub start: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// Seeds `1, x, x²+2`, then `B_m = x·B_{m−1} − B_{m−2}`.
    BoubakerRec,
    /// Closed monomial sum with binomial `C(n−p, p)`.
    BoubakerMono,
    /// Coefficient recursion `b_{n,j}` exactly as printed, closing cases included.
    BoubakerCoeff,
    ChebT,
    ChebU,
    /// `T̃_0 = 1/2`, `T̃_n = T_n` otherwise.
    ChebTTilde,
    /// Seeds `1, x`, then `x·B̃_{n−1} − B̃_{n−2}`.
    BTilde,
    /// `S_n = (B_n − 2·T_n(x/2)) / 4`, `n ≥ 2`.
    SClass,
    /// `F_1 = 1`, `F_2 = 3x`, `F_n = 3x·F_{n−1} − 2·F_{n−2}`.
    Fermat,
    Lucas(LucasParams),
    /// Row polynomials of `T(f|g)`.
    RiordanRows { f: P, g: P },
}

impl FamilySpec {
    pub const NAMED: [FamilySpec; 9] = [
        FamilySpec::BoubakerRec,
        FamilySpec::BoubakerMono,
        FamilySpec::BoubakerCoeff,
        FamilySpec::ChebT,
        FamilySpec::ChebU,
        FamilySpec::ChebTTilde,
        FamilySpec::BTilde,
        FamilySpec::SClass,
        FamilySpec::Fermat,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            FamilySpec::BoubakerRec => "BOUBAKER_REC",
            FamilySpec::BoubakerMono => "BOUBAKER_MONO",
            FamilySpec::BoubakerCoeff => "BOUBAKER_COEFF",
            FamilySpec::ChebT => "CHEB_T",
            FamilySpec::ChebU => "CHEB_U",
            FamilySpec::ChebTTilde => "CHEB_T_TILDE",
            FamilySpec::BTilde => "BTILDE",
            FamilySpec::SClass => "S_CLASS",
            FamilySpec::Fermat => "FERMAT",
            FamilySpec::Lucas(_) => "LUCAS",
            FamilySpec::RiordanRows { .. } => "RIORDAN_ROWS",
        }
    }

    /// First valid index.
    pub fn min_index(&self) -> usize {
        match self {
            FamilySpec::SClass => 2,
            FamilySpec::Fermat => 1,
            FamilySpec::Lucas(l) => l.start,
            _ => 0,
        }
    }

    /// `(p, q, first n)` such that `P_n = p·P_{n−1} + q·P_{n−2}` is part of
    /// the family's definition (or, for the monomial form and the S-class,
    /// a consequence that can be checked). `None` for families with no such
    /// recurrence.
    pub fn recurrence(&self) -> Option<(P, P, usize)> {
        let x = P::x();
        let minus_one = P::from_i64s(&[-1]);
        match self {
            FamilySpec::BoubakerRec | FamilySpec::BoubakerMono => Some((x, minus_one, 3)),
            FamilySpec::BTilde => Some((x, minus_one, 2)),
            FamilySpec::SClass => Some((x, minus_one, 4)),
            FamilySpec::ChebT | FamilySpec::ChebU => Some((P::from_i64s(&[0, 2]), minus_one, 2)),
            FamilySpec::ChebTTilde => Some((P::from_i64s(&[0, 2]), minus_one, 3)),
            FamilySpec::Fermat => Some((P::from_i64s(&[0, 3]), P::from_i64s(&[-2]), 3)),
            FamilySpec::Lucas(l) => Some((l.p.clone(), l.q.clone(), l.start + 2)),
            FamilySpec::BoubakerCoeff | FamilySpec::RiordanRows { .. } => None,
        }
    }

    /// The Fermat sequence as a [`LucasParams`] instance.
    pub fn fermat_as_lucas() -> LucasParams {
        LucasParams {
            p: P::from_i64s(&[0, 3]),
            q: P::from_i64s(&[-2]),
            seed0: P::one(),
            seed1: P::from_i64s(&[0, 3]),
            start: 1,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Canonical ids plus a few lower-case aliases (`boubaker`, `fermat`, ...).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        let spec = match norm.as_str() {
            "BOUBAKER_REC" | "BOUBAKER" => FamilySpec::BoubakerRec,
            "BOUBAKER_MONO" => FamilySpec::BoubakerMono,
            "BOUBAKER_COEFF" => FamilySpec::BoubakerCoeff,
            "CHEB_T" | "CHEBYSHEV_T" => FamilySpec::ChebT,
            "CHEB_U" | "CHEBYSHEV_U" => FamilySpec::ChebU,
            "CHEB_T_TILDE" => FamilySpec::ChebTTilde,
            "BTILDE" | "B_TILDE" => FamilySpec::BTilde,
            "S_CLASS" | "S" => FamilySpec::SClass,
            "FERMAT" => FamilySpec::Fermat,
            _ => return Err(FamilyError::UnknownFamily(s.to_string())),
        };
        Ok(spec)
    }
}

/// `ξ(n) = ⌊n/2⌋`.
pub fn xi(n: usize) -> usize {
    n / 2
}

/// The alternative closed form `(2n + (−1)^n − 1)/4`; equal to [`xi`].
pub fn xi_closed_form(n: usize) -> usize {
    let n = n as i64;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    ((2 * n + sign - 1) / 4) as usize
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn lucas(p: &P, q: &P, seed0: &P, seed1: &P, count: usize) -> Vec<P> {
    let mut out = Vec::with_capacity(count);
    if count > 0 {
        out.push(seed0.clone());
    }
    if count > 1 {
        out.push(seed1.clone());
    }
    while out.len() < count {
        let n = out.len();
        let next = &(p * &out[n - 1]) + &(q * &out[n - 2]);
        out.push(next);
    }
    out
}

/// Monomial form: `Σ_p (n−4p)/(n−p) · C(n−p, p) · (−1)^p · x^{n−2p}`.
/// At `n = 0` the ratio `(n−4p)/(n−p)` is `0/0`; its value `1` is used.
pub fn boubaker_monomial(n: usize) -> P {
    if n == 0 {
        return P::one();
    }
    boubaker_monomial_with(n, |n, p| binom(n - p, p))
}

/// Same sum with the binomial read literally as `C(p, n−p)`.
pub fn boubaker_monomial_printed_binomial(n: usize) -> P {
    if n == 0 {
        return P::one();
    }
    boubaker_monomial_with(n, |n, p| binom(p, n - p))
}

fn boubaker_monomial_with(n: usize, binomial: impl Fn(i64, i64) -> BigInt) -> P {
    let mut coeffs = vec![int(0); n + 1];
    let ni = n as i64;
    for p in 0..=xi(n) as i64 {
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let ratio = Rational::new(BigInt::from(ni - 4 * p), BigInt::from(ni - p));
        let c = ratio * Rational::from_integer(binomial(ni, p)) * int(sign);
        coeffs[(ni - 2 * p) as usize] = c;
    }
    P::new(coeffs)
}

/// Closing coefficient `b_{n,ξ(n)}` by the printed case split:
/// `(−1)^{n/2}·2` for even `n`, `(−1)^{(n+1)/2}·(n−2)` for odd `n`.
pub fn closing_coefficient_printed(n: usize) -> Rational {
    let ni = n as i64;
    if n.is_multiple_of(2) {
        let sign = if (ni / 2) % 2 == 0 { 1 } else { -1 };
        int(2 * sign)
    } else {
        let sign = if ((ni + 1) / 2) % 2 == 0 { 1 } else { -1 };
        int(sign * (ni - 2))
    }
}

/// Coefficients `b_{n,j}` of `x^{n−2j}` by the printed recursion:
///
/// * `b_{n,0} = 1`, `b_{n,1} = −(n−4)`;
/// * `b_{n,j+1} = (n−2j)(n−2j−1)/((j+1)(n−j−1)) · (n−4j−4)/(n−4j) · b_{n,j}`;
/// * `b_{n,ξ(n)}` replaced by [`closing_coefficient_printed`] when `ξ(n) ≥ 1`.
///
/// When `n = 4j` the factor `(n−4j)` vanishes in both `b_{n,j}` and the next
/// denominator; the chain tracks `b_{n,j}/(n−4j)` so the step stays defined.
pub fn boubaker_coefficients_printed(n: usize) -> Vec<Rational> {
    let top = xi(n);
    let ni = n as i64;
    let mut b = vec![int(1)];
    if top >= 1 {
        b.push(int(-(ni - 4)));
        // q_j = b_{n,j} / (n − 4j); q_1 = −1 for every n
        let mut q = int(-1);
        for j in 1..top as i64 {
            let ratio = rat((ni - 2 * j) * (ni - 2 * j - 1), (j + 1) * (ni - j - 1));
            q *= ratio;
            b.push(q.clone() * int(ni - 4 * j - 4));
        }
        b[top] = closing_coefficient_printed(n);
    }
    b
}

fn boubaker_coeff_poly(n: usize) -> P {
    let mut coeffs = vec![int(0); n + 1];
    for (j, c) in boubaker_coefficients_printed(n).into_iter().enumerate() {
        coeffs[n - 2 * j] = c;
    }
    P::new(coeffs)
}

/// `2·T_n(x/2)` for `n = 0..count`: seeds `2, x`, recurrence `x·p − p`.
fn doubled_chebyshev_t_half(count: usize) -> Vec<P> {
    lucas(
        &P::x(),
        &P::from_i64s(&[-1]),
        &P::from_i64s(&[2]),
        &P::x(),
        count,
    )
}

/// Polynomials for indices `min_index..=hi` (empty if `hi < min_index`).
pub fn sequence(spec: &FamilySpec, hi: usize) -> Result<Vec<P>, FamilyError> {
    let start = spec.min_index();
    if hi < start {
        return Ok(Vec::new());
    }
    let count = hi + 1;
    let x = P::x();
    let minus_one = P::from_i64s(&[-1]);
    let two_x = P::from_i64s(&[0, 2]);
    let seq = match spec {
        FamilySpec::BoubakerRec => {
            let mut v = vec![P::one(), x.clone(), P::from_i64s(&[2, 0, 1])];
            while v.len() < count {
                let m = v.len();
                let next = &(&x * &v[m - 1]) - &v[m - 2];
                v.push(next);
            }
            v.truncate(count);
            v
        }
        FamilySpec::BoubakerMono => (0..count).map(boubaker_monomial).collect(),
        FamilySpec::BoubakerCoeff => (0..count).map(boubaker_coeff_poly).collect(),
        FamilySpec::ChebT => lucas(&two_x, &minus_one, &P::one(), &x, count),
        FamilySpec::ChebU => lucas(&two_x, &minus_one, &P::one(), &two_x, count),
        FamilySpec::ChebTTilde => {
            let mut v = lucas(&two_x, &minus_one, &P::one(), &x, count);
            v[0] = P::constant(rat(1, 2));
            v
        }
        FamilySpec::BTilde => lucas(&x, &minus_one, &P::one(), &x, count),
        FamilySpec::SClass => {
            let b = sequence(&FamilySpec::BoubakerRec, hi)?;
            let t2 = doubled_chebyshev_t_half(count);
            let quarter = rat(1, 4);
            return Ok((start..count)
                .map(|n| (&b[n] - &t2[n]).scale(&quarter))
                .collect());
        }
        FamilySpec::Fermat => {
            let l = FamilySpec::fermat_as_lucas();
            return Ok(lucas(&l.p, &l.q, &l.seed0, &l.seed1, count - start));
        }
        FamilySpec::Lucas(l) => {
            return Ok(lucas(&l.p, &l.q, &l.seed0, &l.seed1, count - start));
        }
        FamilySpec::RiordanRows { f, g } => RiordanArray::from_polys(f, g, hi)?
            .row_polynomials(hi)?
            .polys,
    };
    Ok(seq)
}

/// The single polynomial at index `n`.
pub fn generate(spec: &FamilySpec, n: usize) -> Result<P, FamilyError> {
    let min = spec.min_index();
    if n < min {
        return Err(FamilyError::IndexBelowDomain {
            family: spec.id().to_string(),
            n: n as i64,
            min,
        });
    }
    let mut seq = sequence(spec, n)?;
    Ok(seq.pop().unwrap_or_else(P::zero))
}

/// Indexed run of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySequence {
    pub spec: FamilySpec,
    pub start: usize,
    pub polys: Vec<P>,
}

impl PolySequence {
    /// Indices `lo..=hi`; `lo` must respect the family minimum.
    pub fn new(spec: FamilySpec, lo: usize, hi: usize) -> Result<Self, FamilyError> {
        let min = spec.min_index();
        if lo < min {
            return Err(FamilyError::IndexBelowDomain {
                family: spec.id().to_string(),
                n: lo as i64,
                min,
            });
        }
        let all = sequence(&spec, hi)?;
        let polys = all.into_iter().skip(lo - min).collect();
        Ok(PolySequence { spec, start: lo, polys })
    }

    pub fn get(&self, n: usize) -> Option<&P> {
        n.checked_sub(self.start).and_then(|i| self.polys.get(i))
    }

    pub fn indexed(&self) -> impl Iterator<Item = (usize, &P)> {
        self.polys.iter().enumerate().map(move |(i, p)| (self.start + i, p))
    }

    /// One `{"family", "n", "coeffs"}` object per index.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.indexed()
                .map(|(n, p)| {
                    json!({
                        "family": self.spec.id(),
                        "n": n,
                        "coeffs": p.coeffs().iter().map(Scalar::to_json).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }

    /// `n,c0,c1,...` per line, ascending degree, coefficients as `num/den`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (n, p) in self.indexed() {
            out.push_str(&n.to_string());
            if p.is_zero() {
                out.push_str(",0");
            }
            for c in p.coeffs() {
                out.push(',');
                out.push_str(&c.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> String {
        let label = self.spec.id();
        let width = self
            .indexed()
            .map(|(n, _)| n.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for (n, p) in self.indexed() {
            out.push_str(&format!("{label}[{n:>width$}] = {p}\n"));
        }
        out
    }
}

/// Thread-safe memo of generated sequences, keyed by family.
#[derive(Default)]
pub struct FamilyCache {
    seqs: Mutex<HashMap<FamilySpec, Arc<Vec<P>>>>,
}

impl FamilyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, spec: &FamilySpec, n: usize) -> Result<P, FamilyError> {
        let min = spec.min_index();
        if n < min {
            return Err(FamilyError::IndexBelowDomain {
                family: spec.id().to_string(),
                n: n as i64,
                min,
            });
        }
        let cached = self.seqs.lock().ok().and_then(|m| m.get(spec).cloned());
        if let Some(seq) = cached.as_ref().filter(|s| s.len() > n - min) {
            return Ok(seq[n - min].clone());
        }
        // grow geometrically so a scan over n costs O(n) rebuilds, not O(n²)
        let have = cached.map_or(0, |s| s.len() + min);
        let hi = n.max(2 * have).max(8);
        let seq = Arc::new(sequence(spec, hi)?);
        let out = seq[n - min].clone();
        if let Ok(mut m) = self.seqs.lock() {
            m.insert(spec.clone(), seq);
        }
        Ok(out)
    }
}

/// Printed closing coefficient against the constant (even `n`) or linear
/// (odd `n`) coefficient of the recurrence-defined `B_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosingCoefficient {
    pub n: usize,
    pub printed: Rational,
    pub from_recurrence: Rational,
}

impl ClosingCoefficient {
    pub fn agrees(&self) -> bool {
        self.printed == self.from_recurrence
    }
}

pub fn closing_coefficient(n: usize) -> Result<ClosingCoefficient, FamilyError> {
    if n < 1 {
        return Err(FamilyError::IndexBelowDomain {
            family: "BOUBAKER_COEFF".into(),
            n: 0,
            min: 1,
        });
    }
    let b = generate(&FamilySpec::BoubakerRec, n)?;
    Ok(ClosingCoefficient {
        n,
        printed: closing_coefficient_printed(n),
        from_recurrence: b.coeff(n - 2 * xi(n)),
    })
}

/// Per-index comparison of the Boubaker constructions against the
/// recurrence definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefinitionAgreement {
    pub n: usize,
    pub monomial_agrees: bool,
    pub printed_binomial_agrees: bool,
    pub coefficient_agrees: bool,
    /// Degrees where the printed coefficient recursion differs.
    pub coefficient_mismatch_degrees: Vec<usize>,
}

pub fn definition_audit(n_max: usize) -> Vec<DefinitionAgreement> {
    let rec = sequence(&FamilySpec::BoubakerRec, n_max).unwrap_or_default();
    rec.iter()
        .enumerate()
        .map(|(n, b)| {
            let coeff = boubaker_coeff_poly(n);
            let hi = b.coeffs().len().max(coeff.coeffs().len());
            let mismatch: Vec<usize> = (0..hi).filter(|&d| b.coeff(d) != coeff.coeff(d)).collect();
            DefinitionAgreement {
                n,
                monomial_agrees: boubaker_monomial(n) == *b,
                printed_binomial_agrees: boubaker_monomial_printed_binomial(n) == *b,
                coefficient_agrees: mismatch.is_empty(),
                coefficient_mismatch_degrees: mismatch,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::ToFloat;

    fn g(spec: FamilySpec, n: usize) -> P {
        generate(&spec, n).unwrap()
    }

    fn p(cs: &[i64]) -> P {
        P::from_i64s(cs)
    }

    #[test]
    fn xi_values() {
        assert_eq!(xi(0), 0);
        assert_eq!(xi(5), 2);
        assert_eq!(xi(8), 4);
        for n in 0..200 {
            assert_eq!(xi(n), xi_closed_form(n));
        }
    }

    #[test]
    fn boubaker_seeds_and_successors() {
        assert_eq!(g(FamilySpec::BoubakerRec, 0), p(&[1]));
        assert_eq!(g(FamilySpec::BoubakerRec, 1), p(&[0, 1]));
        assert_eq!(g(FamilySpec::BoubakerRec, 2), p(&[2, 0, 1]));
        assert_eq!(g(FamilySpec::BoubakerRec, 3), p(&[0, 1, 0, 1]));
        assert_eq!(g(FamilySpec::BoubakerRec, 4), p(&[-2, 0, 0, 0, 1]));
        assert_eq!(g(FamilySpec::BoubakerRec, 8), p(&[-2, 0, 8, 0, 0, 0, -4, 0, 1]));
    }

    #[test]
    fn named_examples() {
        assert_eq!(g(FamilySpec::BTilde, 5), p(&[0, 3, 0, -4, 0, 1]));
        assert_eq!(g(FamilySpec::Fermat, 4), p(&[0, -12, 0, 27]));
        assert_eq!(g(FamilySpec::Fermat, 1), p(&[1]));
        assert_eq!(g(FamilySpec::Fermat, 3), p(&[-2, 0, 9]));
        assert_eq!(g(FamilySpec::SClass, 4), p(&[-1, 0, 1]));
        assert_eq!(g(FamilySpec::ChebU, 2), p(&[-1, 0, 4]));
        assert_eq!(g(FamilySpec::ChebT, 4), p(&[1, 0, -8, 0, 8]));
        assert_eq!(g(FamilySpec::ChebTTilde, 0), P::constant(rat(1, 2)));
        assert_eq!(g(FamilySpec::ChebTTilde, 3), g(FamilySpec::ChebT, 3));
    }

    #[test]
    fn domains_enforced() {
        assert!(matches!(
            generate(&FamilySpec::SClass, 1),
            Err(FamilyError::IndexBelowDomain { min: 2, .. })
        ));
        assert!(matches!(
            generate(&FamilySpec::Fermat, 0),
            Err(FamilyError::IndexBelowDomain { min: 1, .. })
        ));
        assert!(PolySequence::new(FamilySpec::SClass, 0, 4).is_err());
    }

    #[test]
    fn lucas_reproduces_fermat() {
        let spec = FamilySpec::Lucas(FamilySpec::fermat_as_lucas());
        for n in 1..20 {
            assert_eq!(g(spec.clone(), n), g(FamilySpec::Fermat, n));
        }
    }

    #[test]
    fn riordan_rows_reproduce_btilde() {
        let spec = FamilySpec::RiordanRows {
            f: P::one(),
            g: p(&[1, 0, 1]),
        };
        assert_eq!(sequence(&spec, 20).unwrap(), sequence(&FamilySpec::BTilde, 20).unwrap());
    }

    #[test]
    fn recurrence_and_monomial_agree_to_64() {
        let rec = sequence(&FamilySpec::BoubakerRec, 64).unwrap();
        let mono = sequence(&FamilySpec::BoubakerMono, 64).unwrap();
        assert_eq!(rec, mono);
    }

    #[test]
    fn printed_coefficient_recursion_disagrees() {
        let audit = definition_audit(64);
        assert!(audit.iter().all(|a| a.monomial_agrees));
        // n = 2: the stated b_{2,1} = 2 is overwritten by the closing case −2
        assert!(!audit[2].coefficient_agrees);
        assert_eq!(audit[2].coefficient_mismatch_degrees, vec![0]);
        // small odd n agree
        assert!(audit[1].coefficient_agrees && audit[3].coefficient_agrees);
        // the literal binomial C(p, n−p) fails from n = 1 on
        assert!(audit[0].printed_binomial_agrees);
        assert!(audit[1..].iter().all(|a| !a.printed_binomial_agrees));
    }

    #[test]
    fn coefficient_recursion_with_signs_restored_matches() {
        // independent check of the diagnosis: negate the step ratio and use
        // b_{n,n/2} = (−1)^{n/2+1}·2; the recursion then reproduces B_n
        let rec = sequence(&FamilySpec::BoubakerRec, 40).unwrap();
        for (n, b) in rec.iter().enumerate().skip(1) {
            let ni = n as i64;
            let top = xi(n);
            let mut coeffs = vec![int(1)];
            let mut q = int(-1);
            if top >= 1 {
                coeffs.push(int(-(ni - 4)));
            }
            for j in 1..top as i64 {
                q = -q * rat((ni - 2 * j) * (ni - 2 * j - 1), (j + 1) * (ni - j - 1));
                coeffs.push(q.clone() * int(ni - 4 * j - 4));
            }
            if n % 2 == 0 && top >= 1 {
                let sign = if (ni / 2) % 2 == 0 { -1 } else { 1 };
                assert_eq!(coeffs[top], int(2 * sign), "closing n={n}");
            }
            for (j, c) in coeffs.iter().enumerate() {
                assert_eq!(&b.coeff(n - 2 * j), c, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn closing_coefficient_report() {
        let c2 = closing_coefficient(2).unwrap();
        assert_eq!((c2.printed.clone(), c2.from_recurrence.clone()), (int(-2), int(2)));
        assert!(!c2.agrees());
        let c4 = closing_coefficient(4).unwrap();
        assert_eq!((c4.printed.clone(), c4.from_recurrence.clone()), (int(2), int(-2)));
        let c3 = closing_coefficient(3).unwrap();
        assert_eq!((c3.printed.clone(), c3.from_recurrence.clone()), (int(1), int(1)));
        assert!(c3.agrees());
        // odd case is right throughout, even case is off by a sign throughout
        for n in 1..=64 {
            let c = closing_coefficient(n).unwrap();
            assert_eq!(c.agrees(), n % 2 == 1, "n={n}");
        }
        assert!(closing_coefficient(0).is_err());
    }

    #[test]
    fn recurrences_resubstitute() {
        let specs = [
            FamilySpec::BoubakerRec,
            FamilySpec::BoubakerMono,
            FamilySpec::ChebT,
            FamilySpec::ChebU,
            FamilySpec::ChebTTilde,
            FamilySpec::BTilde,
            FamilySpec::SClass,
            FamilySpec::Fermat,
        ];
        for spec in specs {
            let (a, b, first) = spec.recurrence().unwrap();
            let seq = PolySequence::new(spec.clone(), spec.min_index(), 64).unwrap();
            for n in first.max(2)..=64 {
                let lhs = seq.get(n).unwrap();
                let rhs = &(&a * seq.get(n - 1).unwrap()) + &(&b * seq.get(n - 2).unwrap());
                assert_eq!(lhs, &rhs, "{spec} n={n}");
            }
        }
    }

    #[test]
    fn parity_of_classical_families() {
        for spec in [FamilySpec::BoubakerRec, FamilySpec::BTilde, FamilySpec::ChebT, FamilySpec::ChebU] {
            for (n, poly) in sequence(&spec, 64).unwrap().iter().enumerate() {
                assert!(poly.has_parity(n), "{spec} n={n}");
                assert_eq!(poly.degree(), Some(n));
            }
        }
    }

    #[test]
    fn s_class_is_shifted_btilde() {
        let s = PolySequence::new(FamilySpec::SClass, 2, 64).unwrap();
        let bt = sequence(&FamilySpec::BTilde, 62).unwrap();
        for n in 0..=62 {
            assert_eq!(s.get(n + 2).unwrap(), &bt[n], "n={n}");
        }
    }

    #[test]
    fn chebyshev_trig_spot_check() {
        let t_seq = sequence(&FamilySpec::ChebT, 32).unwrap();
        for j in 0..16 {
            let t = 0.1 + j as f64 * 0.19;
            for (n, tn) in t_seq.iter().enumerate() {
                // exact evaluation at the binary value of cos t, rounded once;
                // Horner in f64 loses ~1e-4 to cancellation by n = 32
                let x = Rational::from_float(t.cos()).unwrap();
                let dev = (tn.eval(&x).to_float() - (n as f64 * t).cos()).abs();
                assert!(dev < 1e-9, "n={n} t={t} dev={dev}");
            }
        }
    }

    #[test]
    fn cache_matches_direct_generation() {
        let cache = FamilyCache::new();
        for n in [3usize, 40, 9, 64, 2] {
            assert_eq!(cache.get(&FamilySpec::SClass, n).unwrap(), g(FamilySpec::SClass, n));
        }
        assert!(cache.get(&FamilySpec::Fermat, 0).is_err());
    }

    #[test]
    fn dump_formats() {
        let seq = PolySequence::new(FamilySpec::BTilde, 0, 2).unwrap();
        assert_eq!(seq.to_csv(), "0,1\n1,0,1\n2,-1,0,1\n");
        assert_eq!(seq.to_table(), "BTILDE[0] = 1\nBTILDE[1] = x\nBTILDE[2] = x^2 - 1\n");
        let v = seq.to_json();
        assert_eq!(v[2], json!({"family": "BTILDE", "n": 2, "coeffs": [["-1","1"],["0","1"],["1","1"]]}));
    }

    #[test]
    fn family_names_parse() {
        assert_eq!("boubaker".parse::<FamilySpec>().unwrap(), FamilySpec::BoubakerRec);
        assert_eq!("CHEB_T_TILDE".parse::<FamilySpec>().unwrap(), FamilySpec::ChebTTilde);
        assert_eq!("s-class".parse::<FamilySpec>().unwrap(), FamilySpec::SClass);
        assert!("legendre".parse::<FamilySpec>().is_err());
        for spec in FamilySpec::NAMED {
            assert_eq!(spec.id().parse::<FamilySpec>().unwrap(), spec);
        }
    }
}
