//! Bounded-range certification of polynomial and Riordan-array identities.
//!
//! Each catalog entry is checked by exact coefficient comparison over Q or
//! Q(√2): an identity is CERTIFIED on a range when `left − right` is the
//! zero polynomial at every index, and REFUTED at the first index where it
//! is not, with that difference as the witness.

mod catalog;
mod expr;
mod trig;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::families::{FamilyCache, FamilyError};
use crate::polycore::{AlgebraError, DynPoly, Poly, QuadScalar, Series};
use crate::riordan::{RiordanArray, RiordanError, TriMatrix};

pub use catalog::{catalog, lookup, ArraySpec, CatalogEntry, Claim, RatFn};
pub use expr::{BelowDomain, Expr, IndexExpr, Term};
pub use trig::{default_angles, trig_spot_check, TrigForm, DEFAULT_TRIG_MAX_INDEX};

type Q = QuadScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("unknown identity {0:?}")]
    UnknownId(String),
    #[error("{family}: index {n} is below the family's first index {min}")]
    IndexBelowDomain { family: String, n: i64, min: usize },
    #[error("{id}: range starts at {lo}, below the first stated index {min}")]
    RangeBelowDomain { id: String, lo: usize, min: usize },
    #[error("empty range {0}..{1}")]
    EmptyRange(usize, usize),
    #[error("summation index used outside a sum")]
    UnboundSumIndex,
    #[error("{0} has no trigonometric form")]
    NoTrigForm(String),
    #[error("sample angle {0} is not finite")]
    NonFiniteSample(String),
    #[error("{0}: group law and matrix product disagree")]
    GroupLawMismatch(String),
    #[error(transparent)]
    Family(FamilyError),
    #[error(transparent)]
    Riordan(#[from] RiordanError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<FamilyError> for IdentityError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::IndexBelowDomain { family, n, min } => {
                IdentityError::IndexBelowDomain { family, n, min }
            }
            other => IdentityError::Family(other),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    /// First failing index and `left − right` there (never zero).
    Refuted { fail_n: usize, difference: Poly<Q> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: String,
    pub statement: String,
    pub range: (usize, usize),
    pub verdict: Verdict,
    pub notes: String,
}

impl IdentityReport {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn to_json(&self) -> Value {
        let (verdict, fail_n, difference) = match &self.verdict {
            Verdict::Certified => ("certified", Value::Null, Value::Null),
            Verdict::Refuted { fail_n, difference } => (
                "refuted",
                json!(fail_n),
                DynPoly::narrow(difference.clone()).to_json(),
            ),
        };
        json!({
            "id": self.id,
            "statement": self.statement,
            "verdict": verdict,
            "range": [self.range.0, self.range.1],
            "fail_n": fail_n,
            "difference": difference,
            "notes": self.notes,
        })
    }
}

pub fn reports_to_json(reports: &[IdentityReport]) -> Value {
    Value::Array(reports.iter().map(IdentityReport::to_json).collect())
}

/// Fixed-width text table, one line per report.
pub fn summary_table(reports: &[IdentityReport]) -> String {
    let id_w = reports.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let range = |r: &IdentityReport| format!("{}..{}", r.range.0, r.range.1);
    let range_w = reports.iter().map(|r| range(r).len()).max().unwrap_or(5).max(5);
    let mut out = format!("{:id_w$}  {:9}  {:range_w$}  {:>6}  difference\n", "id", "verdict", "range", "fail_n");
    for r in reports {
        let (verdict, fail, diff) = match &r.verdict {
            Verdict::Certified => ("CERTIFIED", String::new(), String::new()),
            Verdict::Refuted { fail_n, difference } => (
                "REFUTED",
                fail_n.to_string(),
                DynPoly::narrow(difference.clone()).to_string(),
            ),
        };
        out.push_str(&format!("{:id_w$}  {verdict:9}  {:range_w$}  {fail:>6}  {diff}", r.id, range(r)));
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    out
}

fn entry(id: &str) -> Result<&'static CatalogEntry, IdentityError> {
    lookup(id).ok_or_else(|| IdentityError::UnknownId(id.to_string()))
}

/// `left − right` at one index of a polynomial claim, or row `n` of
/// `target − product` for a matrix claim.
pub fn difference_at(id: &str, n: usize, cache: &FamilyCache) -> Result<Poly<Q>, IdentityError> {
    let e = entry(id)?;
    check_lo(e, n)?;
    match &e.claim {
        Claim::Poly { left, right } => poly_difference(left, right, n, cache),
        Claim::Matrix { target, factors } => {
            let (t, p) = matrix_pair(e.id, target, factors, n)?;
            Ok(&t.row_poly(n) - &p.row_poly(n))
        }
    }
}

fn poly_difference(left: &Expr, right: &Expr, n: usize, cache: &FamilyCache) -> Result<Poly<Q>, IdentityError> {
    let n = n as i64;
    Ok(&left.eval(n, cache)? - &right.eval(n, cache)?)
}

fn check_lo(e: &CatalogEntry, lo: usize) -> Result<(), IdentityError> {
    if lo < e.min_index {
        return Err(IdentityError::RangeBelowDomain {
            id: e.id.to_string(),
            lo,
            min: e.min_index,
        });
    }
    Ok(())
}

fn series(r: &RatFn, order: usize) -> Result<Series<Q>, IdentityError> {
    let num = Series::from_poly(&r.num, order);
    let den = Series::from_poly(&r.den, order);
    Ok(num.mul(&den.inverse()?))
}

fn array(a: &ArraySpec, order: usize) -> Result<RiordanArray<Q>, IdentityError> {
    Ok(RiordanArray::new(series(&a.f, order)?, series(&a.g, order)?)?)
}

/// Target matrix and the product of the factors through row `last`. The
/// product is formed twice, by the group law and by matrix multiplication,
/// and the two must agree.
fn matrix_pair(
    id: &str,
    target: &ArraySpec,
    factors: &[ArraySpec],
    last: usize,
) -> Result<(TriMatrix<Q>, TriMatrix<Q>), IdentityError> {
    let arrays = factors
        .iter()
        .map(|a| array(a, last))
        .collect::<Result<Vec<_>, _>>()?;
    let by_law = RiordanArray::product(&arrays)?.matrix(last)?;
    let mut by_mat = TriMatrix::identity(last);
    for a in &arrays {
        by_mat = by_mat.mul(&a.matrix(last)?)?;
    }
    if by_law != by_mat {
        return Err(IdentityError::GroupLawMismatch(id.to_string()));
    }
    Ok((array(target, last)?.matrix(last)?, by_law))
}

/// Certify or refute one catalog entry on `lo..=hi`.
pub fn verify(id: &str, lo: usize, hi: usize) -> Result<IdentityReport, IdentityError> {
    verify_with(entry(id)?, lo, hi, &FamilyCache::new())
}

fn verify_with(e: &CatalogEntry, lo: usize, hi: usize, cache: &FamilyCache) -> Result<IdentityReport, IdentityError> {
    if hi < lo {
        return Err(IdentityError::EmptyRange(lo, hi));
    }
    check_lo(e, lo)?;
    let mut verdict = Verdict::Certified;
    match &e.claim {
        Claim::Poly { left, right } => {
            for n in lo..=hi {
                let d = poly_difference(left, right, n, cache)?;
                if !d.is_zero() {
                    verdict = Verdict::Refuted { fail_n: n, difference: d };
                    break;
                }
            }
        }
        Claim::Matrix { target, factors } => {
            let (t, p) = matrix_pair(e.id, target, factors, hi)?;
            if let Some(n) = (lo..=hi).find(|&n| t.row(n) != p.row(n)) {
                verdict = Verdict::Refuted {
                    fail_n: n,
                    difference: &t.row_poly(n) - &p.row_poly(n),
                };
            }
        }
    }
    Ok(IdentityReport {
        id: e.id.to_string(),
        statement: e.statement.to_string(),
        range: (lo, hi),
        verdict,
        notes: e.notes.to_string(),
    })
}

/// Every catalog entry, in catalog order. Polynomial claims run from their
/// first stated index to `max(n_max, min_index)`; matrix claims compare
/// rows `0..=n_max`.
pub fn verify_catalog(n_max: usize) -> Result<Vec<IdentityReport>, IdentityError> {
    let cache = FamilyCache::new();
    catalog()
        .par_iter()
        .map(|e| {
            let (lo, hi) = if e.is_matrix() {
                (0, n_max)
            } else {
                (e.min_index, n_max.max(e.min_index))
            };
            verify_with(e, lo, hi, &cache)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{int, Scalar};

    fn refuted_at(r: &IdentityReport) -> Option<(usize, &Poly<Q>)> {
        match &r.verdict {
            Verdict::Refuted { fail_n, difference } => Some((*fail_n, difference)),
            Verdict::Certified => None,
        }
    }

    #[test]
    fn chebyshev_links() {
        assert!(verify("EQ_3_1", 2, 64).unwrap().is_certified());
        assert!(verify("EQ_4_2", 0, 64).unwrap().is_certified());
        assert!(verify("EQ_4_1", 0, 64).unwrap().is_certified());
    }

    #[test]
    fn fermat_links() {
        assert!(verify("EQ_4_6_SHIFTED", 1, 32).unwrap().is_certified());
        let printed = verify("EQ_4_6_PRINTED", 1, 10).unwrap();
        assert_eq!(refuted_at(&printed).unwrap().0, 1);

        let r = verify("EQ_4_7_PRINTED", 2, 10).unwrap();
        let (n, d) = refuted_at(&r).unwrap();
        assert_eq!(n, 2);
        // (x² + 2) − √2·x
        let want = Poly::new(vec![Q::from(int(2)), Q::new(int(0), int(-1)), Q::one()]);
        assert_eq!(d, &want);
        assert!(verify("EQ_4_7_CORRECTED", 2, 32).unwrap().is_certified());
    }

    #[test]
    fn eq_3_20_is_off_by_one_btilde() {
        let r = verify("EQ_3_20", 2, 10).unwrap();
        let (n, d) = refuted_at(&r).unwrap();
        assert_eq!((n, d), (2, &Poly::from_i64s(&[-1])));
        assert!(verify("EQ_3_20_CORRECTED", 2, 64).unwrap().is_certified());
        assert!(!verify("EQ_3_20_S_INDEXING", 6, 20).unwrap().is_certified());
        assert_eq!(refuted_at(&verify("EQ_3_20_S_MAPPING", 2, 20).unwrap()).unwrap().0, 2);
    }

    #[test]
    fn summation_bounds() {
        for id in ["EQ_3_2", "EQ_3_3_TILDE", "EQ_3_6", "EQ_3_4", "EQ_3_7_CORRECTED", "EQ_3_10_CORRECTED", "EQ_3_11_CORRECTED"] {
            let e = lookup(id).unwrap();
            assert!(verify(id, e.min_index, 20).unwrap().is_certified(), "{id}");
        }
        let r = verify("EQ_3_3", 1, 20).unwrap();
        assert_eq!(refuted_at(&r).unwrap(), (1, &Poly::from_i64s(&[-8])));
        for id in ["EQ_3_5", "EQ_3_7", "EQ_3_10", "EQ_3_11"] {
            let e = lookup(id).unwrap();
            assert_eq!(refuted_at(&verify(id, e.min_index, 20).unwrap()).unwrap().0, 1, "{id}");
        }
    }

    #[test]
    fn factorizations() {
        assert!(verify("EQ_3_19", 0, 63).unwrap().is_certified());
        assert!(verify("EQ_4_9", 0, 63).unwrap().is_certified());
        let r = verify("EQ_4_10", 0, 20).unwrap();
        let (n, d) = refuted_at(&r).unwrap();
        // T(1+3x²|1+x²/2) vs T(1+3x²|1+x²): rows differ first at n = 2
        assert_eq!(n, 2);
        assert!(!d.is_zero());
        assert!(!verify("EQ_4_10_DISPLAY", 0, 20).unwrap().is_certified());
        assert!(verify("EQ_4_10_CORRECTED", 0, 63).unwrap().is_certified());
    }

    #[test]
    fn riordan_row_entries() {
        assert!(verify("EQ_3_14", 0, 64).unwrap().is_certified());
        assert!(verify("EQ_3_18", 2, 64).unwrap().is_certified());
        assert!(verify("EQ_4_8_BOUBAKER", 0, 64).unwrap().is_certified());
        assert!(verify("EQ_4_4_DISPLAY", 1, 64).unwrap().is_certified());
        assert_eq!(refuted_at(&verify("EQ_4_8_FERMAT_LABEL", 1, 10).unwrap()).unwrap().0, 1);
        assert!(verify("EQ_3_12_SHIFT", 0, 62).unwrap().is_certified());
        assert_eq!(refuted_at(&verify("EQ_3_12_PRINTED", 4, 10).unwrap()).unwrap().0, 4);
    }

    #[test]
    fn definition_entries() {
        assert!(verify("EQ_2_1_MONO", 0, 64).unwrap().is_certified());
        assert_eq!(refuted_at(&verify("EQ_2_2_COEFF", 0, 64).unwrap()).unwrap().0, 2);
    }

    #[test]
    fn range_errors() {
        assert!(matches!(verify("EQ_3_1", 0, 5), Err(IdentityError::RangeBelowDomain { min: 2, .. })));
        assert!(matches!(verify("EQ_3_1", 5, 4), Err(IdentityError::EmptyRange(5, 4))));
        assert!(matches!(verify("EQ_0_0", 0, 4), Err(IdentityError::UnknownId(_))));
    }

    #[test]
    fn catalog_run_is_ordered_and_json_shaped() {
        let reports = verify_catalog(16).unwrap();
        assert_eq!(reports.len(), catalog().len());
        for (r, e) in reports.iter().zip(catalog()) {
            assert_eq!(r.id, e.id);
        }
        let v = reports_to_json(&reports);
        let refuted = v.as_array().unwrap().iter().find(|r| r["id"] == "EQ_4_7_PRINTED").unwrap();
        assert_eq!(refuted["verdict"], "refuted");
        assert_eq!(refuted["fail_n"], 2);
        assert!(refuted["difference"]["coeffs"].is_array());
        let cert = &v[0];
        assert_eq!(cert["verdict"], "certified");
        assert!(cert["fail_n"].is_null() && cert["difference"].is_null());
        assert_eq!(reports, verify_catalog(16).unwrap());
        let table = summary_table(&reports);
        assert_eq!(table.lines().count(), reports.len() + 1);
        assert!(table.contains("EQ_3_20 ") && table.contains("REFUTED"));
    }
}
