//! `rlab`: generate polynomial families, compute Riordan arrays, certify
//! the identity catalog, isolate roots and fit expansions.
//!
//! Exit status: 0 on success, 2 when `verify` refutes an identity, 1 on
//! any operational error.

pub mod literal;

use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rlab_core::bpes::{self, BpesFit, RootRecord};
use rlab_core::families::{FamilySpec, LucasParams, PolySequence};
use rlab_core::identities::{self, IdentityReport, Verdict};
use rlab_core::polycore::{DynPoly, Poly, Rational, Scalar, ToFloat};
use rlab_core::riordan::{RiordanArray, TriMatrix};

pub use literal::{parse_poly_literal, parse_rational_literal, LiteralError};

/// Default cap on truncation order and polynomial index.
pub const DEFAULT_MAX_ORDER: usize = 128;
pub const MAX_ORDER_ENV: &str = "RLAB_MAX_ORDER";

#[derive(Parser, Debug)]
#[command(name = "rlab", version, about = "Exact Riordan-array and Boubaker polynomial toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate polynomials of a family over an index range.
    Gen(GenArgs),
    /// Entries, matrices, inverses and row polynomials of T(f|g).
    Riordan(RiordanArgs),
    /// Certify or refute catalog identities.
    Verify(VerifyArgs),
    /// Minimal positive roots of B_{4n}.
    Roots(RootsArgs),
    /// Fit sampled data with the Boubaker expansion.
    Bpes(BpesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Table,
}

/// Inclusive index range `a..b`, or a single index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexRange {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for IndexRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("expected a nonnegative integer, got {t:?}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if hi < lo {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(IndexRange { lo, hi })
    }
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// boubaker, boubaker_mono, boubaker_coeff, cheb_t, cheb_u, cheb_t_tilde,
    /// btilde, s_class, fermat or lucas.
    #[arg(long)]
    pub family: String,
    /// Index or inclusive range `a..b`.
    #[arg(long)]
    pub n: IndexRange,
    /// Lucas: p(x).
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Lucas: q(x).
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Lucas: first seed.
    #[arg(long, allow_hyphen_values = true)]
    pub seed0: Option<String>,
    /// Lucas: second seed.
    #[arg(long, allow_hyphen_values = true)]
    pub seed1: Option<String>,
    /// Lucas: index of the first seed.
    #[arg(long, default_value_t = 0)]
    pub start: usize,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
#[group(id = "action", multiple = false, required = true)]
pub struct RiordanAction {
    /// Leading block through row N.
    #[arg(long, value_name = "N")]
    pub matrix: Option<usize>,
    /// Row polynomials 0..=N.
    #[arg(long, value_name = "N")]
    pub rows: Option<usize>,
    /// Inverse of the leading block through row N.
    #[arg(long, value_name = "N")]
    pub inverse: Option<usize>,
    /// Single entry `n,k`.
    #[arg(long, value_name = "N,K")]
    pub entry: Option<String>,
}

#[derive(Args, Debug)]
pub struct RiordanArgs {
    /// Numerator series f as a polynomial literal.
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    /// Denominator series g as a polynomial literal.
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
    #[command(flatten)]
    pub action: RiordanAction,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Catalog key; repeatable.
    #[arg(long = "id", num_args = 1..)]
    pub ids: Vec<String>,
    /// Every catalog entry.
    #[arg(long, conflicts_with = "ids")]
    pub all: bool,
    /// List catalog keys and statements.
    #[arg(long, conflicts_with_all = ["ids", "all"])]
    pub list: bool,
    /// Running-index range; defaults to each entry's own range.
    #[arg(long)]
    pub range: Option<IndexRange>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    /// Index or range of n (roots of B_{4n}).
    #[arg(long)]
    pub n: IndexRange,
    #[arg(long, default_value_t = 1e-9)]
    pub precision: f64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct BpesArgs {
    /// CSV file with header `r,f`.
    #[arg(long, required_unless_present = "properties")]
    pub samples: Option<PathBuf>,
    /// Number of expansion terms N.
    #[arg(long, default_value_t = 4)]
    pub terms: usize,
    /// Maximum radial range R.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub precision: f64,
    /// Report the values of B_{4n}, B_{4n}', B_{4n}'' at 0 instead of fitting.
    #[arg(long, value_name = "N", conflicts_with = "samples")]
    pub properties: Option<usize>,
    #[command(flatten)]
    pub out: Output,
}

/// Truncation cap from `RLAB_MAX_ORDER`.
fn max_order() -> Result<usize> {
    match std::env::var(MAX_ORDER_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow!("{MAX_ORDER_ENV}: expected a nonnegative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn check_order(flag: &str, value: usize) -> Result<()> {
    let cap = max_order()?;
    if value > cap {
        bail!("{flag}: {value} exceeds the order cap {cap} (set {MAX_ORDER_ENV} to raise it)");
    }
    Ok(())
}

fn literal(flag: &str, text: &str) -> Result<DynPoly> {
    parse_poly_literal(text).map_err(|e| anyhow!("{flag}: {e} in {text:?}"))
}

fn rational_literal(flag: &str, text: &str) -> Result<Poly<Rational>> {
    parse_rational_literal(text).map_err(|e| anyhow!("{flag}: {e} in {text:?}"))
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?)
}

fn family_spec(a: &GenArgs) -> Result<FamilySpec> {
    if a.family.eq_ignore_ascii_case("lucas") {
        let need = |flag: &str, v: &Option<String>| -> Result<Poly<Rational>> {
            let text = v.as_deref().ok_or_else(|| anyhow!("--family lucas requires {flag}"))?;
            rational_literal(flag, text)
        };
        return Ok(FamilySpec::Lucas(LucasParams {
            p: need("--p", &a.p)?,
            q: need("--q", &a.q)?,
            seed0: need("--seed0", &a.seed0)?,
            seed1: need("--seed1", &a.seed1)?,
            start: a.start,
        }));
    }
    a.family.parse().map_err(|e| anyhow!("--family: {e}"))
}

fn cmd_gen(a: &GenArgs) -> Result<String> {
    check_order("--n", a.n.hi)?;
    let spec = family_spec(a)?;
    let seq = PolySequence::new(spec, a.n.lo, a.n.hi).map_err(|e| anyhow!("--n: {e}"))?;
    Ok(match a.out.format {
        Format::Json => json_line(&seq.to_json()),
        Format::Csv => seq.to_csv(),
        Format::Table => seq.to_table(),
    })
}

fn matrix_out<S: Scalar>(m: &TriMatrix<S>, format: Format) -> String {
    match format {
        Format::Json => json_line(&m.to_json()),
        Format::Csv => m.to_csv(),
        Format::Table => m.to_table(),
    }
}

fn rows_out<S: Scalar>(rows: &[Poly<S>], format: Format) -> String {
    match format {
        Format::Json => json_line(&Value::Array(
            rows.iter()
                .enumerate()
                .map(|(n, p)| json!({"n": n, "coeffs": p.coeffs().iter().map(S::to_json).collect::<Vec<_>>()}))
                .collect(),
        )),
        Format::Csv => rows
            .iter()
            .enumerate()
            .map(|(n, p)| {
                let cs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                if cs.is_empty() {
                    format!("{n},0\n")
                } else {
                    format!("{n},{}\n", cs.join(","))
                }
            })
            .collect(),
        Format::Table => {
            let w = rows.len().saturating_sub(1).to_string().len();
            rows.iter()
                .enumerate()
                .map(|(n, p)| format!("p[{n:>w$}](t) = {}\n", p.display_var("t")))
                .collect()
        }
    }
}

fn scalar_out<S: Scalar>(v: &S, format: Format) -> String {
    match format {
        Format::Json => json_line(&v.to_json()),
        Format::Csv | Format::Table => format!("{v}\n"),
    }
}

fn riordan_with<S: Scalar>(f: &Poly<S>, g: &Poly<S>, a: &RiordanArgs) -> Result<String> {
    let act = &a.action;
    let fmt = a.out.format;
    let build = |flag: &str, order: usize| -> Result<RiordanArray<S>> {
        check_order(flag, order)?;
        RiordanArray::from_polys(f, g, order).map_err(|e| anyhow!("--g: {e}"))
    };
    if let Some(n) = act.matrix {
        let arr = build("--matrix", n)?;
        return Ok(matrix_out(&arr.matrix(n)?, fmt));
    }
    if let Some(n) = act.rows {
        let arr = build("--rows", n)?;
        return Ok(rows_out(&arr.row_polynomials(n)?.polys, fmt));
    }
    if let Some(n) = act.inverse {
        let arr = build("--inverse", n)?;
        let inv = arr.inverse_matrix(n).map_err(|e| anyhow!("--inverse: {e}"))?;
        return Ok(matrix_out(&inv, fmt));
    }
    let spec = act.entry.as_deref().unwrap_or_default();
    let parsed = spec
        .split_once(',')
        .and_then(|(n, k)| Some((n.trim().parse::<usize>().ok()?, k.trim().parse::<usize>().ok()?)));
    let (n, k) = parsed.ok_or_else(|| anyhow!("--entry: expected `n,k`, got {spec:?}"))?;
    let arr = build("--entry", n.max(k))?;
    Ok(scalar_out(&arr.entry(n, k)?, fmt))
}

fn cmd_riordan(a: &RiordanArgs) -> Result<String> {
    let f = literal("--f", &a.f)?;
    let g = literal("--g", &a.g)?;
    match (&f, &g) {
        (DynPoly::Rational(f), DynPoly::Rational(g)) => riordan_with(f, g, a),
        _ => riordan_with(&f.promote(), &g.promote(), a),
    }
}

fn verify_csv(reports: &[IdentityReport]) -> Result<String> {
    csv_string(
        &["id", "verdict", "lo", "hi", "fail_n", "difference", "notes"],
        reports.iter().map(|r| {
            let (verdict, fail, diff) = match &r.verdict {
                Verdict::Certified => ("certified", String::new(), String::new()),
                Verdict::Refuted { fail_n, difference } => (
                    "refuted",
                    fail_n.to_string(),
                    DynPoly::narrow(difference.clone()).to_string(),
                ),
            };
            vec![
                r.id.clone(),
                verdict.to_string(),
                r.range.0.to_string(),
                r.range.1.to_string(),
                fail,
                diff,
                r.notes.clone(),
            ]
        }),
    )
}

fn cmd_verify(a: &VerifyArgs) -> Result<(String, bool)> {
    if a.list {
        let entries = identities::catalog();
        let body = match a.out.format {
            Format::Json => json_line(&Value::Array(
                entries
                    .iter()
                    .map(|e| json!({"id": e.id, "statement": e.statement, "min_index": e.min_index}))
                    .collect(),
            )),
            Format::Csv => csv_string(
                &["id", "statement", "min_index"],
                entries
                    .iter()
                    .map(|e| vec![e.id.to_string(), e.statement.to_string(), e.min_index.to_string()]),
            )?,
            Format::Table => {
                let w = entries.iter().map(|e| e.id.len()).max().unwrap_or(0);
                entries.iter().map(|e| format!("{:w$}  {}\n", e.id, e.statement)).collect()
            }
        };
        return Ok((body, true));
    }
    let entries: Vec<_> = if a.all {
        identities::catalog().iter().collect()
    } else if a.ids.is_empty() {
        bail!("--id: give at least one catalog key, or --all");
    } else {
        a.ids
            .iter()
            .map(|id| identities::lookup(id).ok_or_else(|| anyhow!("--id: unknown catalog key {id:?}")))
            .collect::<Result<_>>()?
    };
    if let Some(r) = a.range {
        check_order("--range", r.hi)?;
    }
    let reports = entries
        .iter()
        .map(|e| {
            let (lo, hi) = a.range.map_or_else(|| e.default_range(), |r| (r.lo, r.hi));
            identities::verify(e.id, lo, hi).with_context(|| format!("--range: {}", e.id))
        })
        .collect::<Result<Vec<_>>>()?;
    let all_certified = reports.iter().all(IdentityReport::is_certified);
    let body = match a.out.format {
        Format::Json => json_line(&identities::reports_to_json(&reports)),
        Format::Csv => verify_csv(&reports)?,
        Format::Table => identities::summary_table(&reports),
    };
    Ok((body, all_certified))
}

fn roots_json(records: &[RootRecord]) -> Value {
    Value::Array(
        records
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "alpha": r.alpha,
                    "lo": r.lo.to_string(),
                    "hi": r.hi.to_string(),
                    "precision": r.precision,
                    "roots_below_lo": r.roots_below_lo,
                    "sign_changes": r.sign_changes.len(),
                })
            })
            .collect(),
    )
}

fn cmd_roots(a: &RootsArgs) -> Result<String> {
    if a.n.lo == 0 {
        bail!("--n: indices start at 1");
    }
    check_order("--n", 4 * a.n.hi)?;
    let records = (a.n.lo..=a.n.hi)
        .map(|n| bpes::minimal_positive_root(n, a.precision))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| anyhow!("--precision: {e}"))?;
    Ok(match a.out.format {
        Format::Json => json_line(&roots_json(&records)),
        Format::Csv => bpes::root_table_csv(&records),
        Format::Table => {
            let mut s = format!("{:>3}  {:>17}  {:>12}  {:>7}\n", "n", "alpha", "width", "below");
            for r in &records {
                let width = (&r.hi - &r.lo).to_float();
                s.push_str(&format!("{:>3}  {:>17.15}  {:>12.3e}  {:>7}\n", r.n, r.alpha, width, r.roots_below_lo));
            }
            s
        }
    })
}

/// `r,f` samples from a CSV file with a header row.
pub fn read_samples(path: &std::path::Path) -> Result<Vec<(f64, f64)>> {
    let flag = || format!("--samples: {}", path.display());
    let mut rd = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(flag)?;
    let headers = rd.headers().with_context(flag)?.clone();
    if headers.len() != 2 || &headers[0] != "r" || &headers[1] != "f" {
        bail!("{}: expected header `r,f`", flag());
    }
    let mut out = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec.with_context(flag)?;
        let num = |j: usize| -> Result<f64> {
            rec[j]
                .parse::<f64>()
                .map_err(|_| anyhow!("{}: line {}: not a number: {:?}", flag(), i + 2, &rec[j]))
        };
        out.push((num(0)?, num(1)?));
    }
    Ok(out)
}

fn fit_table(fit: &BpesFit) -> String {
    let mut s = format!("N = {}\nR = {}\n", fit.n_terms, fit.r_max);
    for (j, (z, a)) in fit.zeta.iter().zip(&fit.alpha).enumerate() {
        s.push_str(&format!("zeta[{}] = {z:.12e}  (alpha = {a:.15})\n", j + 1));
    }
    s.push_str(&format!("residual_rms = {:.6e}\n", fit.residual_rms));
    s.push_str(&format!("f0_identity_gap = {:.6e}\n", fit.f0_identity_gap));
    s.push_str(&format!(
        "boundary: at_zero = {:.12}  at_R = {:.3e}  dr_at_zero = {}\n",
        fit.boundary.at_zero, fit.boundary.at_r, fit.boundary.dr_at_zero
    ));
    s
}

fn cmd_bpes(a: &BpesArgs) -> Result<String> {
    if let Some(n) = a.properties {
        check_order("--properties", 4 * n)?;
        let p = bpes::basis_properties(n).map_err(|e| anyhow!("--properties: {e}"))?;
        return Ok(match a.out.format {
            Format::Json => json_line(&p.to_json()),
            Format::Csv => csv_string(
                &["property", "computed", "claimed", "matches"],
                ["B(0)", "B'(0)", "B''(0)"].iter().enumerate().map(|(i, name)| {
                    vec![
                        name.to_string(),
                        p.computed[i].to_string(),
                        p.claimed[i].to_string(),
                        p.matches()[i].to_string(),
                    ]
                }),
            )?,
            Format::Table => {
                let deg = 4 * n;
                let mut s = String::new();
                for (i, name) in ["B(0)", "B'(0)", "B''(0)"].iter().enumerate() {
                    let mark = if p.matches()[i] { "ok" } else { "MISMATCH" };
                    s.push_str(&format!(
                        "B_{deg} {name:7} computed {:>6}  claimed {:>6}  {mark}\n",
                        p.computed[i].to_string(),
                        p.claimed[i].to_string()
                    ));
                }
                s
            }
        });
    }
    let path = a.samples.as_ref().ok_or_else(|| anyhow!("--samples: required"))?;
    let samples = read_samples(path)?;
    check_order("--terms", 4 * a.terms)?;
    let fit = bpes::bpes_fit(&samples, a.terms, a.radius, a.precision).map_err(|e| anyhow!("bpes: {e}"))?;
    Ok(match a.out.format {
        Format::Json => json_line(&fit.to_json()),
        Format::Csv => csv_string(
            &["r", "f", "fit", "residual"],
            samples.iter().map(|&(r, f)| {
                let v = bpes::bpes_eval(&fit, r).unwrap_or(f64::NAN);
                vec![r.to_string(), f.to_string(), v.to_string(), (v - f).to_string()]
            }),
        )?,
        Format::Table => fit_table(&fit),
    })
}

fn emit(out: &Output, body: &str, stdout: &mut dyn Write) -> Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, body).with_context(|| format!("--output: {}", path.display())),
        None => stdout.write_all(body.as_bytes()).context("writing standard output"),
    }
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> Result<i32> {
    let (out, body, code) = match &cli.command {
        Command::Gen(a) => (&a.out, cmd_gen(a)?, 0),
        Command::Riordan(a) => (&a.out, cmd_riordan(a)?, 0),
        Command::Verify(a) => {
            let (body, ok) = cmd_verify(a)?;
            (&a.out, body, if ok { 0 } else { 2 })
        }
        Command::Roots(a) => (&a.out, cmd_roots(a)?, 0),
        Command::Bpes(a) => (&a.out, cmd_bpes(a)?, 0),
    };
    emit(out, &body, stdout)?;
    Ok(code)
}

/// Parse `args` (program name first), run, and return the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if informational { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return if informational { 0 } else { 1 };
        }
    };
    match dispatch(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", chain(&e));
            1
        }
    }
}

fn chain(e: &anyhow::Error) -> impl Display + '_ {
    e.chain().map(|c| c.to_string()).collect::<Vec<_>>().join(": ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("0..5".parse::<IndexRange>().unwrap(), IndexRange { lo: 0, hi: 5 });
        assert_eq!("3".parse::<IndexRange>().unwrap(), IndexRange { lo: 3, hi: 3 });
        assert_eq!("2..=4".parse::<IndexRange>().unwrap(), IndexRange { lo: 2, hi: 4 });
        assert!("5..2".parse::<IndexRange>().is_err());
        assert!("a..2".parse::<IndexRange>().is_err());
        assert!("-1..2".parse::<IndexRange>().is_err());
    }
}
