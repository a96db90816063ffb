//! Boubaker polynomial expansion scheme.
//!
//! `f(r) ≈ (1/2N) Σ_{n=1}^{N} ζ_n · B_{4n}(r·α_n/R)`, where `α_n` is the
//! smallest positive zero of `B_{4n}`. Roots are isolated exactly (rational
//! bisection with a Sturm-sequence minimality certificate); floats appear
//! only in the least-squares solve.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::families::{generate, FamilySpec};
use crate::polycore::{int, Poly, Rational, Scalar, ToFloat};

type P = Poly<Rational>;

/// Upper end of the positive-root scan.
pub const ROOT_SCAN_BOUND: i64 = 4;
/// Cells per unit in the coarse exact scan.
pub const SCAN_CELLS_PER_UNIT: i64 = 256;
/// Largest accepted condition number of the design matrix. Beyond `1/ε`
/// the smallest singular value is below double-precision resolution and the
/// matrix is treated as rank-deficient. The basis conditioning grows about
/// a thousandfold per term, so this admits `N ≤ 8` on typical grids.
pub const MAX_CONDITION: f64 = 1.0 / f64::EPSILON;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BpesError {
    #[error("index must be at least 1, got {0}")]
    InvalidIndex(usize),
    #[error("precision must be a positive finite number, got {0}")]
    InvalidPrecision(f64),
    #[error("B_{degree} has no positive root in (0, {bound}]")]
    ScanExhausted { degree: usize, bound: i64 },
    #[error("B_{degree}: root bracket could not be sign-certified")]
    NoSignCertificate { degree: usize },
    #[error("no samples")]
    EmptySamples,
    #[error("{terms} terms but only {samples} samples")]
    TooManyTerms { terms: usize, samples: usize },
    #[error("term count must be at least 1")]
    NoTerms,
    #[error("radius R must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("sample radius {r} outside [0, {r_max}]")]
    SampleOutOfRange { r: f64, r_max: f64 },
    #[error("non-finite sample value at r = {0}")]
    NonFiniteSample(f64),
    #[error("design matrix is ill-conditioned (condition estimate {0:e})")]
    IllConditioned(f64),
    #[error("negative radius {0}")]
    NegativeRadius(f64),
}

/// Minimal positive root of `B_{4n}` with its exact certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct RootRecord {
    pub n: usize,
    pub alpha: f64,
    pub lo: Rational,
    pub hi: Rational,
    pub precision: f64,
    /// Sturm count of distinct roots in `(0, lo]`; zero certifies minimality.
    pub roots_below_lo: usize,
    /// Cells `(a, b]` of the coarse exact scan over `(0, ROOT_SCAN_BOUND]`
    /// where the sign changes or a grid point is an exact zero.
    pub sign_changes: Vec<(Rational, Rational)>,
}

impl RootRecord {
    pub fn csv_header() -> &'static str {
        "n,alpha,lo,hi,precision"
    }

    pub fn to_csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.n, self.alpha, self.lo, self.hi, self.precision)
    }
}

pub fn root_table_csv(records: &[RootRecord]) -> String {
    let mut out = format!("{}\n", RootRecord::csv_header());
    for r in records {
        out.push_str(&r.to_csv_row());
        out.push('\n');
    }
    out
}

fn sign(v: &Rational) -> i8 {
    if v.is_zero() {
        0
    } else if *v > int(0) {
        1
    } else {
        -1
    }
}

/// Sturm sequence `p, p', −rem(p, p'), ...`.
pub struct Sturm {
    chain: Vec<P>,
}

impl Sturm {
    pub fn new(p: &P) -> Self {
        let mut chain = vec![p.clone(), p.derivative(1)];
        while let Some(last) = chain.last().filter(|q| !q.is_zero() && q.degree() != Some(0)) {
            let prev = &chain[chain.len() - 2];
            let (_, r) = prev.div_rem(last).expect("nonzero divisor");
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        chain.retain(|q| !q.is_zero());
        Sturm { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let signs: Vec<i8> = self.chain.iter().map(|q| sign(&q.eval(x))).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in `(a, b]`, for `a < b`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

fn check_precision(precision: f64) -> Result<Rational, BpesError> {
    if !(precision.is_finite() && precision > 0.0) {
        return Err(BpesError::InvalidPrecision(precision));
    }
    Rational::from_float(precision).ok_or(BpesError::InvalidPrecision(precision))
}

/// `B_{4n}` by the three-term recurrence.
pub fn basis_poly(n: usize) -> P {
    generate(&FamilySpec::BoubakerRec, 4 * n).expect("Boubaker family has no lower bound")
}

pub fn minimal_positive_root(n: usize, precision: f64) -> Result<RootRecord, BpesError> {
    minimal_positive_root_within(n, precision, ROOT_SCAN_BOUND)
}

/// As [`minimal_positive_root`] with an explicit scan bound.
pub fn minimal_positive_root_within(n: usize, precision: f64, bound: i64) -> Result<RootRecord, BpesError> {
    if n < 1 {
        return Err(BpesError::InvalidIndex(n));
    }
    let width = check_precision(precision)?;
    let p = basis_poly(n);

    let cells = bound * SCAN_CELLS_PER_UNIT;
    let grid = |i: i64| Rational::new(BigInt::from(i), BigInt::from(SCAN_CELLS_PER_UNIT));
    let mut sign_changes = Vec::new();
    let mut prev = p.eval(&int(0));
    for i in 1..=cells {
        let cur = p.eval(&grid(i));
        if cur.is_zero() || sign(&prev) * sign(&cur) < 0 {
            sign_changes.push((grid(i - 1), grid(i)));
        }
        prev = cur;
    }

    let sturm = Sturm::new(&p);
    let (lo, hi) = isolate_smallest_positive_root(&p, &sturm, &width, bound)?;
    let two = int(2);
    let roots_below_lo = if lo.is_zero() { 0 } else { sturm.count(&int(0), &lo) };
    let alpha = ((&lo + &hi) / &two).to_float();
    Ok(RootRecord {
        n,
        alpha,
        lo,
        hi,
        precision,
        roots_below_lo,
        sign_changes,
    })
}

/// Bracket `(lo, hi)` of width at most `width` around the smallest root of
/// `p` in `(0, bound]`, with `p(lo)` and `p(hi)` of strictly opposite sign.
fn isolate_smallest_positive_root(
    p: &P,
    sturm: &Sturm,
    width: &Rational,
    bound: i64,
) -> Result<(Rational, Rational), BpesError> {
    let degree = p.degree().unwrap_or(0);
    let first = sturm.count(&int(0), &int(bound));
    if first == 0 {
        return Err(BpesError::ScanExhausted { degree, bound });
    }
    // shrink (lo, hi] around the smallest root: it is in (lo, hi] iff
    // there are no roots in (0, lo] and at least one in (0, hi]
    let mut lo = int(0);
    let mut hi = int(bound);
    let two = int(2);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        if sturm.count(&int(0), &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // hi may itself be the root; step past it
    if p.eval(&hi).is_zero() {
        let mut d = (&hi - &lo) / &two;
        loop {
            let (a, b) = (&hi - &d, &hi + &d);
            if sign(&p.eval(&a)) * sign(&p.eval(&b)) < 0 && sturm.count(&a, &b) == 1 {
                lo = a;
                hi = b;
                break;
            }
            d /= &two;
            if d < Rational::new(BigInt::from(1), BigInt::from(1u64 << 62)) {
                return Err(BpesError::NoSignCertificate { degree });
            }
        }
    }
    if sign(&p.eval(&lo)) * sign(&p.eval(&hi)) >= 0 {
        return Err(BpesError::NoSignCertificate { degree });
    }
    Ok((lo, hi))
}

/// Exact values at 0 of `B_{4n}`, its first and second derivatives, and
/// the claimed values `−2, 0, 4n(n−1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisProperties {
    pub n: usize,
    pub computed: [Rational; 3],
    pub claimed: [Rational; 3],
}

impl BasisProperties {
    pub fn matches(&self) -> [bool; 3] {
        [0, 1, 2].map(|i| self.computed[i] == self.claimed[i])
    }

    pub fn to_json(&self) -> Value {
        let names = ["value_at_zero", "first_derivative_at_zero", "second_derivative_at_zero"];
        let mut props = serde_json::Map::new();
        for (i, name) in names.iter().enumerate() {
            props.insert(
                name.to_string(),
                json!({
                    "computed": self.computed[i].to_string(),
                    "claimed": self.claimed[i].to_string(),
                    "matches": self.matches()[i],
                }),
            );
        }
        json!({"n": self.n, "degree": 4 * self.n, "properties": props})
    }
}

pub fn basis_properties(n: usize) -> Result<BasisProperties, BpesError> {
    if n < 1 {
        return Err(BpesError::InvalidIndex(n));
    }
    let p = basis_poly(n);
    let zero = int(0);
    let ni = n as i64;
    Ok(BasisProperties {
        n,
        computed: [p.eval(&zero), p.derivative(1).eval(&zero), p.derivative(2).eval(&zero)],
        claimed: [int(-2), int(0), int(4 * ni * (ni - 1))],
    })
}

/// `B_m(y)` by the recurrence in floating point; stable for `|y| ≤ 2`.
fn boubaker_f64(m: usize, y: f64) -> f64 {
    let seeds = [1.0, y, y * y + 2.0];
    if m < 3 {
        return seeds[m];
    }
    let (mut a, mut b) = (seeds[1], seeds[2]);
    for _ in 3..=m {
        let c = y * b - a;
        a = b;
        b = c;
    }
    b
}

#[derive(Clone, Debug, PartialEq)]
pub struct Boundary {
    pub at_zero: f64,
    pub at_r: f64,
    pub dr_at_zero: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BpesFit {
    pub n_terms: usize,
    pub r_max: f64,
    pub alpha: Vec<f64>,
    pub zeta: Vec<f64>,
    pub grid: Vec<f64>,
    pub residual_rms: f64,
    /// `|fit(0) − (−(1/N)·Σζ_n)|`.
    pub f0_identity_gap: f64,
    pub boundary: Boundary,
}

impl BpesFit {
    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n_terms,
            "R": self.r_max,
            "alpha": self.alpha,
            "zeta": self.zeta,
            "residual_rms": self.residual_rms,
            "f0_identity_gap": self.f0_identity_gap,
            "boundary": {
                "at_zero": self.boundary.at_zero,
                "at_R": self.boundary.at_r,
                "dr_at_zero": self.boundary.dr_at_zero,
            },
        })
    }

    fn term(&self, j: usize, r: f64) -> f64 {
        boubaker_f64(4 * (j + 1), r * self.alpha[j] / self.r_max) / (2 * self.n_terms) as f64
    }
}

/// `(1/2N) Σ ζ_n B_{4n}(r α_n / R)`.
pub fn bpes_eval(fit: &BpesFit, r: f64) -> Result<f64, BpesError> {
    if r < 0.0 {
        return Err(BpesError::NegativeRadius(r));
    }
    Ok((0..fit.n_terms).map(|j| fit.zeta[j] * fit.term(j, r)).sum())
}

/// Least-squares fit of `N` terms to `(r, f(r))` samples on `[0, R]`.
pub fn bpes_fit(samples: &[(f64, f64)], n_terms: usize, r_max: f64, precision: f64) -> Result<BpesFit, BpesError> {
    if samples.is_empty() {
        return Err(BpesError::EmptySamples);
    }
    if n_terms == 0 {
        return Err(BpesError::NoTerms);
    }
    if n_terms > samples.len() {
        return Err(BpesError::TooManyTerms {
            terms: n_terms,
            samples: samples.len(),
        });
    }
    if !(r_max.is_finite() && r_max > 0.0) {
        return Err(BpesError::InvalidRadius(r_max));
    }
    for &(r, f) in samples {
        if !(0.0..=r_max).contains(&r) {
            return Err(BpesError::SampleOutOfRange { r, r_max });
        }
        if !f.is_finite() {
            return Err(BpesError::NonFiniteSample(r));
        }
    }
    let alpha = (1..=n_terms)
        .map(|n| minimal_positive_root(n, precision).map(|rec| rec.alpha))
        .collect::<Result<Vec<_>, _>>()?;

    let mut fit = BpesFit {
        n_terms,
        r_max,
        alpha,
        zeta: vec![0.0; n_terms],
        grid: samples.iter().map(|s| s.0).collect(),
        residual_rms: 0.0,
        f0_identity_gap: 0.0,
        boundary: Boundary { at_zero: 0.0, at_r: 0.0, dr_at_zero: 0.0 },
    };
    let design = DMatrix::from_fn(samples.len(), n_terms, |i, j| fit.term(j, samples[i].0));
    let rhs = DVector::from_iterator(samples.len(), samples.iter().map(|s| s.1));

    let svd = design.clone().svd(true, true);
    let (smax, smin) = svd
        .singular_values
        .iter()
        .fold((0.0f64, f64::INFINITY), |(hi, lo), &s| (hi.max(s), lo.min(s)));
    let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if cond.is_nan() || cond > MAX_CONDITION {
        return Err(BpesError::IllConditioned(cond));
    }
    let zeta = svd.solve(&rhs, 0.0).map_err(|_| BpesError::IllConditioned(cond))?;
    fit.zeta = zeta.iter().copied().collect();

    let residual = &design * &zeta - &rhs;
    fit.residual_rms = (residual.norm_squared() / samples.len() as f64).sqrt();
    let at_zero = bpes_eval(&fit, 0.0)?;
    let zeta_sum: f64 = fit.zeta.iter().sum();
    fit.f0_identity_gap = (at_zero + zeta_sum / n_terms as f64).abs();
    // d/dr at 0 is Σ ζ_n (α_n/R)/(2N) · B'_{4n}(0), with B'_{4n}(0) exact
    let dr_at_zero = (0..n_terms)
        .map(|j| {
            let slope = basis_poly(j + 1).derivative(1).eval(&int(0));
            if slope.is_zero() {
                0.0
            } else {
                fit.zeta[j] * fit.alpha[j] / r_max / (2 * n_terms) as f64 * slope.to_float()
            }
        })
        .sum();
    fit.boundary = Boundary {
        at_zero,
        at_r: bpes_eval(&fit, r_max)?,
        dr_at_zero,
    };
    Ok(fit)
}
