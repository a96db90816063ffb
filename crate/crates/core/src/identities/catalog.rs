use std::sync::OnceLock;

use crate::families::FamilySpec;
use crate::polycore::{int, rat, Poly, QuadScalar, Rational, Scalar};

use super::expr::{Expr, IndexExpr, Term};
use super::trig::TrigForm;

type Q = QuadScalar;

/// Quotient of two polynomials, expanded as a power series where needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    pub num: Poly<Q>,
    pub den: Poly<Q>,
}

impl RatFn {
    pub fn poly(p: Poly<Q>) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn ratio(num: Poly<Q>, den: Poly<Q>) -> Self {
        RatFn { num, den }
    }
}

/// `T(f|g)` by its generating functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArraySpec {
    pub f: RatFn,
    pub g: RatFn,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `left(n) = right(n)` as polynomials.
    Poly { left: Expr, right: Expr },
    /// `target = factors[0] · factors[1] · ...` as Riordan arrays.
    Matrix { target: ArraySpec, factors: Vec<ArraySpec> },
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub statement: &'static str,
    pub claim: Claim,
    /// Smallest running index at which the claim is stated.
    pub min_index: usize,
    pub trig: Option<TrigForm>,
    pub notes: &'static str,
}

impl CatalogEntry {
    pub fn is_matrix(&self) -> bool {
        matches!(self.claim, Claim::Matrix { .. })
    }

    /// Poly claims run `min_index..=64`; matrix claims compare rows `0..=64`.
    pub fn default_range(&self) -> (usize, usize) {
        if self.is_matrix() {
            (0, 64)
        } else {
            (self.min_index, 64.max(self.min_index))
        }
    }
}

fn q(r: Rational) -> Q {
    Q::from(r)
}

fn qi(v: i64) -> Q {
    q(int(v))
}

fn half() -> Q {
    q(rat(1, 2))
}

fn s2_times(r: Rational) -> Q {
    Q::new(int(0), r)
}

fn qp(cs: &[Q]) -> Poly<Q> {
    Poly::new(cs.to_vec())
}

fn ip(cs: &[i64]) -> Poly<Q> {
    Poly::from_i64s(cs)
}

fn rp(cs: &[i64]) -> Poly<Rational> {
    Poly::from_i64s(cs)
}

fn t(family: FamilySpec, index: IndexExpr) -> Term {
    Term::new(family, index)
}

fn at(family: FamilySpec, offset: i64) -> Term {
    Term::new(family, IndexExpr::n(offset))
}

fn add(parts: Vec<Expr>) -> Expr {
    Expr::Add(parts)
}

fn konst(c: i64) -> Expr {
    Expr::Const(ip(&[c]))
}

fn arr(f: RatFn, g: RatFn) -> ArraySpec {
    ArraySpec { f, g }
}

fn arr_p(f: Poly<Q>, g: Poly<Q>) -> ArraySpec {
    arr(RatFn::poly(f), RatFn::poly(g))
}

/// `weight · Σ_{k=lo}^{m−1+hi_shift} family(k_mul·k + k_off)(x/2)`.
fn half_sum(
    family: FamilySpec,
    weight: i64,
    lo: i64,
    hi_shift: i64,
    k_mul: i64,
    k_off: i64,
) -> Expr {
    Expr::sum(
        IndexExpr::constant(lo),
        IndexExpr::n(hi_shift),
        t(family, IndexExpr::new(0, k_mul, k_off))
            .weight(qi(weight))
            .scale(half()),
    )
}

/// `weight · family(n_mul·m + off)(x/2)`.
fn half_term(family: FamilySpec, weight: i64, n_mul: i64, off: i64) -> Expr {
    t(family, IndexExpr::new(n_mul, 0, off))
        .weight(qi(weight))
        .scale(half())
        .into()
}

fn b_at(n_mul: i64, off: i64) -> Expr {
    t(FamilySpec::BoubakerRec, IndexExpr::new(n_mul, 0, off)).into()
}

fn riordan_rows(f: Poly<Rational>, g: Poly<Rational>) -> FamilySpec {
    FamilySpec::RiordanRows { f, g }
}

fn x_times(e: Expr) -> Expr {
    Expr::Mul(vec![Expr::Const(ip(&[0, 1])), e])
}

pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn lookup(id: &str) -> Option<&'static CatalogEntry> {
    catalog().iter().find(|e| e.id.eq_ignore_ascii_case(id))
}

fn build() -> Vec<CatalogEntry> {
    use FamilySpec::*;
    let boubaker_array = || arr_p(ip(&[1, 0, 3]), ip(&[1, 0, 1]));
    let fermat_display_f = rp(&[1, 0, 2]).scale(&rat(1, 9));
    let fermat_display_g = rp(&[1, 0, 2]).scale(&rat(1, 3));
    let fermat_display = || {
        arr_p(
            qp(&[q(rat(1, 9)), Q::zero(), q(rat(2, 9))]),
            qp(&[q(rat(1, 3)), Q::zero(), q(rat(2, 3))]),
        )
    };
    let fermat_label = || {
        arr_p(
            ip(&[1]).scale(&q(rat(1, 3))),
            qp(&[q(rat(1, 3)), Q::zero(), q(rat(1, 3))]),
        )
    };
    let two_s2_over_3 = s2_times(rat(2, 3));
    let s2_over_3 = s2_times(rat(1, 3));

    vec![
        CatalogEntry {
            id: "EQ_2_1_MONO",
            statement: "B_n = Σ_p (n−4p)/(n−p)·C(n−p,p)·(−1)^p·x^(n−2p)",
            claim: Claim::Poly {
                left: at(BoubakerMono, 0).into(),
                right: at(BoubakerRec, 0).into(),
            },
            min_index: 0,
            trig: None,
            notes: "monomial form with binomial C(n−p,p); the literal C(p,n−p) fails from n = 1",
        },
        CatalogEntry {
            id: "EQ_2_2_COEFF",
            statement: "B_n = Σ_j b_{n,j} x^(n−2j), b_{n,j} by the stated coefficient recursion",
            claim: Claim::Poly {
                left: at(BoubakerCoeff, 0).into(),
                right: at(BoubakerRec, 0).into(),
            },
            min_index: 0,
            trig: None,
            notes: "step ratio lacks a factor −1 and the even closing value has the wrong sign; \
                    see the per-index audit",
        },
        CatalogEntry {
            id: "EQ_3_1",
            statement: "B_n(x) = U_n(x/2) + 3·U_{n−2}(x/2)",
            claim: Claim::Poly {
                left: at(BoubakerRec, 0).into(),
                right: add(vec![half_term(ChebU, 1, 1, 0), half_term(ChebU, 3, 1, -2)]),
            },
            min_index: 2,
            trig: None,
            notes: "",
        },
        CatalogEntry {
            id: "EQ_3_2",
            statement: "B_{2m}(x) = 2·Σ_{k=0}^{m} T̃_{2k}(x/2) + 6·Σ_{k=0}^{m−1} T̃_{2k}(x/2)",
            claim: Claim::Poly {
                left: b_at(2, 0),
                right: add(vec![
                    half_sum(ChebTTilde, 2, 0, 0, 2, 0),
                    half_sum(ChebTTilde, 6, 0, -1, 2, 0),
                ]),
            },
            min_index: 1,
            trig: None,
            notes: "running index m",
        },
        CatalogEntry {
            id: "EQ_3_3_TILDE",
            statement: "B_{2m}(x) = 8·Σ_{k=0}^{m−1} T̃_{2k}(x/2) + 2·T̃_{2m}(x/2)",
            claim: Claim::Poly {
                left: b_at(2, 0),
                right: add(vec![
                    half_sum(ChebTTilde, 8, 0, -1, 2, 0),
                    half_term(ChebTTilde, 2, 2, 0),
                ]),
            },
            min_index: 1,
            trig: None,
            notes: "running index m",
        },
        CatalogEntry {
            id: "EQ_3_3",
            statement: "B_{2m}(x) = 4 + 8·Σ_{k=0}^{m−1} T_{2k}(x/2) + 2·T_{2m}(x/2)",
            claim: Claim::Poly {
                left: b_at(2, 0),
                right: add(vec![
                    konst(4),
                    half_sum(ChebT, 8, 0, -1, 2, 0),
                    half_term(ChebT, 2, 2, 0),
                ]),
            },
            min_index: 1,
            trig: Some(TrigForm::EvenCosSum { k_lo: 0 }),
            notes: "running index m; with k from 0 the term T_0 = 1 is counted on top of the \
                    constant 4, overshooting by 8",
        },
        CatalogEntry {
            id: "EQ_3_6",
            statement: "B_{2m}(x) = 4 + 8·Σ_{k=1}^{m−1} T_{2k}(x/2) + 2·T_{2m}(x/2)",
            claim: Claim::Poly {
                left: b_at(2, 0),
                right: add(vec![
                    konst(4),
                    half_sum(ChebT, 8, 1, -1, 2, 0),
                    half_term(ChebT, 2, 2, 0),
                ]),
            },
            min_index: 1,
            trig: Some(TrigForm::EvenCosSum { k_lo: 1 }),
            notes: "running index m; summation from k = 1",
        },
        CatalogEntry {
            id: "EQ_3_4",
            statement: "B_{2m+1}(x) = 8·Σ_{k=0}^{m−1} T_{2k+1}(x/2) + 2·T_{2m+1}(x/2)",
            claim: Claim::Poly {
                left: b_at(2, 1),
                right: add(vec![
                    half_sum(ChebT, 8, 0, -1, 2, 1),
                    half_term(ChebT, 2, 2, 1),
                ]),
            },
            min_index: 0,
            trig: Some(TrigForm::OddCosSum { k_lo: 0 }),
            notes: "running index m",
        },
        CatalogEntry {
            id: "EQ_3_5",
            statement: "B_{2m+1}(x) = 8·Σ_{k=0}^{m−1} T̃_{2k}(x/2) + 2·T̃_{2m+1}(x/2)",
            claim: Claim::Poly {
                left: b_at(2, 1),
                right: add(vec![
                    half_sum(ChebTTilde, 8, 0, -1, 2, 0),
                    half_term(ChebTTilde, 2, 2, 1),
                ]),
            },
            min_index: 0,
            trig: None,
            notes: "running index m; even-index terms cannot sum to an odd polynomial",
        },
        CatalogEntry {
            id: "EQ_3_7",
            statement: "B_{2m+1}(x) = 8·Σ_{k=1}^{m−1} T_{2k+1}(x/2) + 2·T_{2m+1}(x/2)",
            claim: Claim::Poly {
                left: b_at(2, 1),
                right: add(vec![
                    half_sum(ChebT, 8, 1, -1, 2, 1),
                    half_term(ChebT, 2, 2, 1),
                ]),
            },
            min_index: 0,
            trig: Some(TrigForm::OddCosSum { k_lo: 1 }),
            notes: "running index m; summation from k = 1 drops the T_1 term",
        },
        CatalogEntry {
            id: "EQ_3_7_CORRECTED",
            statement: "B_{2m+1}(x) = 8·Σ_{k=0}^{m−1} T_{2k+1}(x/2) + 2·T_{2m+1}(x/2)",
            claim: Claim::Poly {
                left: b_at(2, 1),
                right: add(vec![
                    half_sum(ChebT, 8, 0, -1, 2, 1),
                    half_term(ChebT, 2, 2, 1),
                ]),
            },
            min_index: 0,
            trig: Some(TrigForm::OddCosSum { k_lo: 0 }),
            notes: "running index m; summation from k = 0",
        },
        CatalogEntry {
            id: "EQ_3_10",
            statement: "S_{2m}(x) = 1 + 2·Σ_{k=0}^{m−1} T_{2k}(x/2)",
            claim: Claim::Poly {
                left: t(SClass, IndexExpr::new(2, 0, 0)).into(),
                right: add(vec![konst(1), half_sum(ChebT, 2, 0, -1, 2, 0)]),
            },
            min_index: 1,
            trig: None,
            notes: "running index m; S_n = (B_n − 2T_n(x/2))/4",
        },
        CatalogEntry {
            id: "EQ_3_10_CORRECTED",
            statement: "S_{2m}(x) = 1 + 2·Σ_{k=1}^{m−1} T_{2k}(x/2)",
            claim: Claim::Poly {
                left: t(SClass, IndexExpr::new(2, 0, 0)).into(),
                right: add(vec![konst(1), half_sum(ChebT, 2, 1, -1, 2, 0)]),
            },
            min_index: 1,
            trig: None,
            notes: "running index m; summation from k = 1",
        },
        CatalogEntry {
            id: "EQ_3_11",
            statement: "S_{2m+1}(x) = 2·Σ_{k=0}^{m−1} T_{2k}(x/2)",
            claim: Claim::Poly {
                left: t(SClass, IndexExpr::new(2, 0, 1)).into(),
                right: half_sum(ChebT, 2, 0, -1, 2, 0),
            },
            min_index: 1,
            trig: None,
            notes: "running index m; even-index terms cannot sum to an odd polynomial",
        },
        CatalogEntry {
            id: "EQ_3_11_CORRECTED",
            statement: "S_{2m+1}(x) = 2·Σ_{k=0}^{m−1} T_{2k+1}(x/2)",
            claim: Claim::Poly {
                left: t(SClass, IndexExpr::new(2, 0, 1)).into(),
                right: half_sum(ChebT, 2, 0, -1, 2, 1),
            },
            min_index: 1,
            trig: None,
            notes: "running index m; odd-index terms",
        },
        CatalogEntry {
            id: "EQ_3_12_PRINTED",
            statement: "B̃_n(x) = S_{n−2}(x)",
            claim: Claim::Poly {
                left: at(BTilde, 0).into(),
                right: at(SClass, -2).into(),
            },
            min_index: 4,
            trig: None,
            notes: "the shift runs the other way; see EQ_3_12_SHIFT",
        },
        CatalogEntry {
            id: "EQ_3_12_SHIFT",
            statement: "B̃_n(x) = S_{n+2}(x)",
            claim: Claim::Poly {
                left: at(BTilde, 0).into(),
                right: at(SClass, 2).into(),
            },
            min_index: 0,
            trig: None,
            notes: "",
        },
        CatalogEntry {
            id: "EQ_3_14",
            statement: "row n of T(1|1+x²) = B̃_n",
            claim: Claim::Poly {
                left: at(riordan_rows(rp(&[1]), rp(&[1, 0, 1])), 0).into(),
                right: at(BTilde, 0).into(),
            },
            min_index: 0,
            trig: None,
            notes: "",
        },
        CatalogEntry {
            id: "EQ_3_18",
            statement: "p_n = x·p_{n−1} − p_{n−2} for the rows p_n of T(1|1+x²)",
            claim: Claim::Poly {
                left: at(riordan_rows(rp(&[1]), rp(&[1, 0, 1])), 0).into(),
                right: add(vec![
                    x_times(at(riordan_rows(rp(&[1]), rp(&[1, 0, 1])), -1).into()),
                    at(riordan_rows(rp(&[1]), rp(&[1, 0, 1])), -2)
                        .weight(qi(-1))
                        .into(),
                ]),
            },
            min_index: 2,
            trig: None,
            notes: "",
        },
        CatalogEntry {
            id: "EQ_3_19",
            statement: "T(1+3x²|1+x²) = T(1+3x²|1)·T(1|1+x²)",
            claim: Claim::Matrix {
                target: boubaker_array(),
                factors: vec![arr_p(ip(&[1, 0, 3]), ip(&[1])), arr_p(ip(&[1]), ip(&[1, 0, 1]))],
            },
            min_index: 0,
            trig: None,
            notes: "",
        },
        CatalogEntry {
            id: "EQ_3_20",
            statement: "B_n(x) = x·B̃_{n−1}(x) + 3·B̃_{n−2}(x)",
            claim: Claim::Poly {
                left: at(BoubakerRec, 0).into(),
                right: add(vec![
                    x_times(at(BTilde, -1).into()),
                    at(BTilde, -2).weight(qi(3)).into(),
                ]),
            },
            min_index: 2,
            trig: None,
            notes: "left − right = −B̃_{n−2}; coefficient 2 in place of 3 holds (EQ_3_20_CORRECTED)",
        },
        CatalogEntry {
            id: "EQ_3_20_CORRECTED",
            statement: "B_n(x) = x·B̃_{n−1}(x) + 2·B̃_{n−2}(x)",
            claim: Claim::Poly {
                left: at(BoubakerRec, 0).into(),
                right: add(vec![
                    x_times(at(BTilde, -1).into()),
                    at(BTilde, -2).weight(qi(2)).into(),
                ]),
            },
            min_index: 2,
            trig: None,
            notes: "",
        },
        CatalogEntry {
            id: "EQ_3_20_S_INDEXING",
            statement: "B_n(x) = x·S_{n−3}(x) + 3·S_{n−4}(x)  (reading B̃_m as S_{m−2})",
            claim: Claim::Poly {
                left: at(BoubakerRec, 0).into(),
                right: add(vec![
                    x_times(at(SClass, -3).into()),
                    at(SClass, -4).weight(qi(3)).into(),
                ]),
            },
            min_index: 6,
            trig: None,
            notes: "degrees differ by 4",
        },
        CatalogEntry {
            id: "EQ_3_20_S_MAPPING",
            statement: "B_n(x) = x·S_{n+1}(x) + 3·S_n(x)  (reading B̃_m as S_{m+2})",
            claim: Claim::Poly {
                left: at(BoubakerRec, 0).into(),
                right: add(vec![
                    x_times(at(SClass, 1).into()),
                    at(SClass, 0).weight(qi(3)).into(),
                ]),
            },
            min_index: 2,
            trig: None,
            notes: "same polynomials as EQ_3_20 under S_{m+2} = B̃_m",
        },
        CatalogEntry {
            id: "EQ_4_1",
            statement: "B̃_n(2cos t) = sin((n+1)t)/sin t, i.e. B̃_n(x) = U_n(x/2)",
            claim: Claim::Poly {
                left: at(BTilde, 0).into(),
                right: half_term(ChebU, 1, 1, 0),
            },
            min_index: 0,
            trig: Some(TrigForm::SinRatio),
            notes: "",
        },
        CatalogEntry {
            id: "EQ_4_2",
            statement: "B̃_n(2x) = U_n(x)",
            claim: Claim::Poly {
                left: at(BTilde, 0).scale(qi(2)).into(),
                right: at(ChebU, 0).into(),
            },
            min_index: 0,
            trig: None,
            notes: "",
        },
        CatalogEntry {
            id: "EQ_4_4_DISPLAY",
            statement: "row n of T((1+2x²)/9|(1+2x²)/3) = x·F_n(x)",
            claim: Claim::Poly {
                left: at(riordan_rows(fermat_display_f.clone(), fermat_display_g.clone()), 0).into(),
                right: x_times(at(Fermat, 0).into()),
            },
            min_index: 1,
            trig: None,
            notes: "the displayed Fermat triangle; row 0 is the lone entry 1/3",
        },
        CatalogEntry {
            id: "EQ_4_8_BOUBAKER",
            statement: "row n of T(1+3x²|1+x²) = B_n",
            claim: Claim::Poly {
                left: at(riordan_rows(rp(&[1, 0, 3]), rp(&[1, 0, 1])), 0).into(),
                right: at(BoubakerRec, 0).into(),
            },
            min_index: 0,
            trig: None,
            notes: "",
        },
        CatalogEntry {
            id: "EQ_4_8_FERMAT_LABEL",
            statement: "row n of T(1/3|(1+x²)/3) = x·F_n(x)",
            claim: Claim::Poly {
                left: at(
                    riordan_rows(rp(&[1]).scale(&rat(1, 3)), rp(&[1, 0, 1]).scale(&rat(1, 3))),
                    0,
                )
                .into(),
                right: x_times(at(Fermat, 0).into()),
            },
            min_index: 1,
            trig: None,
            notes: "rows of the labelled array obey p_n = 3x·p_{n−1} − p_{n−2}, not the Fermat \
                    recurrence; the displayed triangle is T((1+2x²)/9|(1+2x²)/3)",
        },
        CatalogEntry {
            id: "EQ_4_6_PRINTED",
            statement: "F_n(x) = (√2)^n·U_n(3x/(2√2))",
            claim: Claim::Poly {
                left: at(Fermat, 0).into(),
                right: at(ChebU, 0)
                    .power(Q::sqrt2(), IndexExpr::n(0))
                    .scale(s2_times(rat(3, 4)))
                    .into(),
            },
            min_index: 1,
            trig: None,
            notes: "degree of F_n is n−1; the index is off by one (EQ_4_6_SHIFTED)",
        },
        CatalogEntry {
            id: "EQ_4_6_SHIFTED",
            statement: "F_{n+1}(x) = (√2)^n·U_n(3x/(2√2))",
            claim: Claim::Poly {
                left: at(Fermat, 1).into(),
                right: at(ChebU, 0)
                    .power(Q::sqrt2(), IndexExpr::n(0))
                    .scale(s2_times(rat(3, 4)))
                    .into(),
            },
            min_index: 0,
            trig: None,
            notes: "evaluated over Q(√2)",
        },
        CatalogEntry {
            id: "EQ_4_7_PRINTED",
            statement: "B_n(x) = (√2)^(−n)·F_n(2√2x/3) + (√2)^(−(n−2))·F_{n−2}(2√2x/3)",
            claim: Claim::Poly {
                left: at(BoubakerRec, 0).into(),
                right: add(vec![
                    at(Fermat, 0)
                        .power(Q::sqrt2(), IndexExpr::n(0).negate())
                        .scale(two_s2_over_3.clone())
                        .zero_below_domain()
                        .into(),
                    at(Fermat, -2)
                        .power(Q::sqrt2(), IndexExpr::n(-2).negate())
                        .scale(two_s2_over_3)
                        .zero_below_domain()
                        .into(),
                ]),
            },
            min_index: 2,
            trig: None,
            notes: "evaluated over Q(√2); F_0 (undefined) contributes zero",
        },
        CatalogEntry {
            id: "EQ_4_7_CORRECTED",
            statement: "B_n(x) = (√2)^(−n)·F_{n+1}(√2x/3) + 3·(√2)^(−(n−2))·F_{n−1}(√2x/3)",
            claim: Claim::Poly {
                left: at(BoubakerRec, 0).into(),
                right: add(vec![
                    at(Fermat, 1)
                        .power(Q::sqrt2(), IndexExpr::n(0).negate())
                        .scale(s2_over_3.clone())
                        .into(),
                    at(Fermat, -1)
                        .weight(qi(3))
                        .power(Q::sqrt2(), IndexExpr::n(-2).negate())
                        .scale(s2_over_3)
                        .into(),
                ]),
            },
            min_index: 2,
            trig: None,
            notes: "evaluated over Q(√2); follows from EQ_3_1 and EQ_4_6_SHIFTED",
        },
        CatalogEntry {
            id: "EQ_4_9",
            statement: "T(1+3x²|1+x²) = T(1+3x²|1)·T(1/2|(1+x²)/2)·T(2|2)",
            claim: Claim::Matrix {
                target: boubaker_array(),
                factors: vec![
                    arr_p(ip(&[1, 0, 3]), ip(&[1])),
                    arr_p(qp(&[half()]), qp(&[half(), Q::zero(), half()])),
                    arr_p(ip(&[2]), ip(&[2])),
                ],
            },
            min_index: 0,
            trig: None,
            notes: "",
        },
        CatalogEntry {
            id: "EQ_4_10",
            statement: "T(1+3x²|1+x²) = T(1+3x²|1)·T(1|√2)·T(1/3|(1+x²)/3)·T(3|3/√2)",
            claim: Claim::Matrix {
                target: boubaker_array(),
                factors: vec![
                    arr_p(ip(&[1, 0, 3]), ip(&[1])),
                    arr_p(ip(&[1]), qp(&[Q::sqrt2()])),
                    fermat_label(),
                    arr_p(ip(&[3]), qp(&[s2_times(rat(3, 2))])),
                ],
            },
            min_index: 0,
            trig: None,
            notes: "over Q(√2); the product is T(1+3x²|1+x²/2)",
        },
        CatalogEntry {
            id: "EQ_4_10_DISPLAY",
            statement: "T(1+3x²|1+x²) = T(1+3x²|1)·T(1|√2)·T((1+2x²)/9|(1+2x²)/3)·T(3|3/√2)",
            claim: Claim::Matrix {
                target: boubaker_array(),
                factors: vec![
                    arr_p(ip(&[1, 0, 3]), ip(&[1])),
                    arr_p(ip(&[1]), qp(&[Q::sqrt2()])),
                    fermat_display(),
                    arr_p(ip(&[3]), qp(&[s2_times(rat(3, 2))])),
                ],
            },
            min_index: 0,
            trig: None,
            notes: "over Q(√2); the Fermat factor read from the displayed triangle; \
                    the product is T((1+3x²)(1+x²)/3|1+x²)",
        },
        CatalogEntry {
            id: "EQ_4_10_CORRECTED",
            statement: "T(1+3x²|1+x²) = T(1+3x²|1)·T(9/(1+x²)|1)·T(1|√2)·T((1+2x²)/9|(1+2x²)/3)·T(1|3/√2)",
            claim: Claim::Matrix {
                target: boubaker_array(),
                factors: vec![
                    arr_p(ip(&[1, 0, 3]), ip(&[1])),
                    arr(RatFn::ratio(ip(&[9]), ip(&[1, 0, 1])), RatFn::poly(ip(&[1]))),
                    arr_p(ip(&[1]), qp(&[Q::sqrt2()])),
                    fermat_display(),
                    arr_p(ip(&[1]), qp(&[s2_times(rat(3, 2))])),
                ],
            },
            min_index: 0,
            trig: None,
            notes: "over Q(√2); the displayed Fermat triangle factored into the Boubaker array",
        },
    ]
}
