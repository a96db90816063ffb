//! Riordan arrays in the two-series notation `T(f|g)`.
//!
//! Entry `(n, k)` of `T(f|g)` is the coefficient of `x^n` in
//! `x^k · f(x) / g(x)^(k+1)`. Column `k` is therefore `(f/g)·(x/g)^k`, and the
//! group law reads
//!
//! ```text
//! T(f|g) · T(f'|g') = T(f · f'(x/g) | g · g'(x/g))
//! ```
//!
//! Every array carries the truncation order of its defining series; no entry
//! beyond that order is ever reported.

use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::polycore::{AlgebraError, Poly, QuadScalar, Rational, Scalar, Series};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RiordanError {
    #[error("denominator series g must have nonzero constant term")]
    InvalidDenominatorSeries,
    #[error("index {requested} is beyond the truncation order {order}")]
    OutOfOrder { requested: usize, order: usize },
    #[error("truncated matrix has a zero diagonal entry at row {0}")]
    SingularTruncation(usize),
    #[error("matrix sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("matrix is not lower triangular: nonzero entry at ({0}, {1})")]
    NotLowerTriangular(usize, usize),
    #[error("matrix is not a Riordan array: first mismatch at ({row}, {col})")]
    NotRiordan { row: usize, col: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `T(f|g)` truncated at a common order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RiordanArray<S> {
    f: Series<S>,
    g: Series<S>,
}

impl<S: Scalar> RiordanArray<S> {
    pub fn new(f: Series<S>, g: Series<S>) -> Result<Self, RiordanError> {
        if g.coeffs()[0].is_zero() {
            return Err(RiordanError::InvalidDenominatorSeries);
        }
        let order = f.order().min(g.order());
        Ok(RiordanArray {
            f: f.truncate(order),
            g: g.truncate(order),
        })
    }

    pub fn from_polys(f: &Poly<S>, g: &Poly<S>, order: usize) -> Result<Self, RiordanError> {
        Self::new(Series::from_poly(f, order), Series::from_poly(g, order))
    }

    /// `T(c|d)` for constants: a diagonal matrix with entries `c/d^(k+1)`.
    pub fn constants(c: S, d: S, order: usize) -> Result<Self, RiordanError> {
        Self::new(Series::constant(c, order), Series::constant(d, order))
    }

    pub fn identity(order: usize) -> Self {
        RiordanArray {
            f: Series::one(order),
            g: Series::one(order),
        }
    }

    /// Highest row index whose entries are all exactly determined.
    pub fn order(&self) -> usize {
        self.f.order()
    }

    pub fn f(&self) -> &Series<S> {
        &self.f
    }

    pub fn g(&self) -> &Series<S> {
        &self.g
    }

    fn check(&self, n: usize) -> Result<(), RiordanError> {
        if n > self.order() {
            Err(RiordanError::OutOfOrder {
                requested: n,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }

    /// Column `k` as a series: `x^k f / g^(k+1)`.
    fn column(&self, k: usize, g_inv: &Series<S>) -> Series<S> {
        self.f.mul(&g_inv.pow(k + 1)).shift(k)
    }

    pub fn entry(&self, n: usize, k: usize) -> Result<S, RiordanError> {
        self.check(n)?;
        self.check(k)?;
        if k > n {
            return Ok(S::zero());
        }
        let g_inv = self.g.inverse()?;
        Ok(self.column(k, &g_inv).coeffs()[n].clone())
    }

    /// The `(size+1)×(size+1)` leading block.
    pub fn matrix(&self, size: usize) -> Result<TriMatrix<S>, RiordanError> {
        self.check(size)?;
        let g_inv = self.g.inverse()?.truncate(size);
        let x_over_g = g_inv.shift(1);
        let mut rows: Vec<Vec<S>> = (0..=size).map(|n| Vec::with_capacity(n + 1)).collect();
        // column k+1 = column k · (x/g)
        let mut col = self.f.truncate(size).mul(&g_inv);
        for k in 0..=size {
            for (n, row) in rows.iter_mut().enumerate().skip(k) {
                row.push(col.coeffs()[n].clone());
            }
            col = col.mul(&x_over_g);
        }
        Ok(TriMatrix { rows })
    }

    /// Group-law product. The result keeps the smaller of the two orders:
    /// `x/g` has zero constant term, so composing with it loses nothing.
    pub fn mul(&self, other: &Self) -> Result<Self, RiordanError> {
        let order = self.order().min(other.order());
        let f = self.f.truncate(order);
        let g = self.g.truncate(order);
        let x_over_g = g.inverse()?.shift(1);
        let f2 = other.f.truncate(order).compose(&x_over_g)?;
        let g2 = other.g.truncate(order).compose(&x_over_g)?;
        RiordanArray::new(f.mul(&f2), g.mul(&g2))
    }

    /// Product of several arrays, left to right.
    pub fn product<'a, I>(factors: I) -> Result<Self, RiordanError>
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let mut it = factors.into_iter();
        let first = it.next().cloned().unwrap_or_else(|| Self::identity(0));
        it.try_fold(first, |acc, a| acc.mul(a))
    }

    /// Exact inverse of the truncated matrix.
    pub fn inverse_matrix(&self, size: usize) -> Result<TriMatrix<S>, RiordanError> {
        self.matrix(size)?.inverse()
    }

    /// `p_n(t) = Σ_k entry(n,k)·t^k` for `n = 0..=size`.
    pub fn row_polynomials(&self, size: usize) -> Result<RowPolySeq<S>, RiordanError> {
        let m = self.matrix(size)?;
        Ok(RowPolySeq {
            source: self.clone(),
            polys: (0..=size).map(|n| m.row_poly(n)).collect(),
        })
    }

    /// Recover `(f, g)` from a displayed lower-triangular matrix and check
    /// that every displayed entry is reproduced.
    ///
    /// Column 0 is `d = f/g`, column 1 is `x·e` with `e = f/g²`; hence
    /// `g = d/e` and `f = d·g`. The recovered series are exact through order
    /// `size − 1` (the last row only pins down `d`).
    pub fn recover(m: &TriMatrix<S>) -> Result<Self, RiordanError> {
        let size = m.size();
        if size == 0 {
            return Self::new(Series::constant(m.get(0, 0), 0), Series::one(0));
        }
        let d = Series::new((0..=size).map(|n| m.get(n, 0)).collect(), size);
        // pad e with a zero top coefficient: it never reaches rows 0..=size
        let e = Series::new((1..=size).map(|n| m.get(n, 1)).collect(), size);
        if d.coeffs()[0].is_zero() || e.coeffs()[0].is_zero() {
            return Err(RiordanError::NotRiordan { row: 1, col: 1 });
        }
        let g = d.mul(&e.inverse()?);
        let f = d.mul(&g);
        let full = RiordanArray::new(f, g)?;
        let rebuilt = full.matrix(size)?;
        if let Some((row, col)) = m.first_mismatch(&rebuilt) {
            return Err(RiordanError::NotRiordan { row, col });
        }
        Ok(RiordanArray {
            f: full.f.truncate(size - 1),
            g: full.g.truncate(size - 1),
        })
    }
}

impl RiordanArray<Rational> {
    pub fn promote(&self) -> RiordanArray<QuadScalar> {
        RiordanArray {
            f: self.f.promote(),
            g: self.g.promote(),
        }
    }
}

/// A Riordan array with its row polynomials in `t`.
#[derive(Clone, Debug)]
pub struct RowPolySeq<S> {
    pub source: RiordanArray<S>,
    pub polys: Vec<Poly<S>>,
}

/// Lower-triangular square matrix, stored row by row (row `n` has `n+1`
/// entries).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriMatrix<S> {
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> TriMatrix<S> {
    /// From full or triangular rows; anything above the diagonal must be zero.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, RiordanError> {
        let mut out = Vec::with_capacity(rows.len());
        for (n, mut row) in rows.into_iter().enumerate() {
            if let Some(k) = row.iter().skip(n + 1).position(|c| !c.is_zero()) {
                return Err(RiordanError::NotLowerTriangular(n, n + 1 + k));
            }
            row.resize(n + 1, S::zero());
            out.push(row);
        }
        Ok(TriMatrix { rows: out })
    }

    pub fn identity(size: usize) -> Self {
        TriMatrix {
            rows: (0..=size)
                .map(|n| {
                    let mut r = vec![S::zero(); n + 1];
                    r[n] = S::one();
                    r
                })
                .collect(),
        }
    }

    /// Largest index; the matrix is `(size+1)×(size+1)`.
    pub fn size(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize, k: usize) -> S {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn row(&self, n: usize) -> &[S] {
        &self.rows[n]
    }

    pub fn row_poly(&self, n: usize) -> Poly<S> {
        Poly::new(self.rows[n].clone())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, RiordanError> {
        if self.size() != o.size() {
            return Err(RiordanError::SizeMismatch(self.size(), o.size()));
        }
        let rows = (0..self.rows.len())
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        (k..=n).fold(S::zero(), |acc, j| {
                            let a = &self.rows[n][j];
                            if a.is_zero() {
                                acc
                            } else {
                                acc.add_ref(&a.mul_ref(&o.rows[j][k]))
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(TriMatrix { rows })
    }

    /// Forward substitution, column by column.
    pub fn inverse(&self) -> Result<Self, RiordanError> {
        let size = self.rows.len();
        let mut diag_inv = Vec::with_capacity(size);
        for n in 0..size {
            diag_inv.push(
                self.rows[n][n]
                    .inv()
                    .ok_or(RiordanError::SingularTruncation(n))?,
            );
        }
        let mut inv: Vec<Vec<S>> = (0..size).map(|n| vec![S::zero(); n + 1]).collect();
        for k in 0..size {
            inv[k][k] = diag_inv[k].clone();
            for n in k + 1..size {
                let mut acc = S::zero();
                for j in k..n {
                    acc = acc.add_ref(&self.rows[n][j].mul_ref(&inv[j][k]));
                }
                inv[n][k] = (-acc).mul_ref(&diag_inv[n]);
            }
        }
        Ok(TriMatrix { rows: inv })
    }

    /// First `(row, col)` where the two matrices differ, scanning rows in
    /// order; sizes must agree for a `None`.
    pub fn first_mismatch(&self, o: &Self) -> Option<(usize, usize)> {
        let n = self.rows.len().max(o.rows.len());
        for r in 0..n {
            for c in 0..=r {
                if r >= self.rows.len() || r >= o.rows.len() || self.get(r, c) != o.get(r, c) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// One row per line, full square, comma separated. Rationals print as
    /// `num/den` (or `num`), Q(√2) elements as `a + b*s2`.
    pub fn to_csv(&self) -> String {
        let size = self.rows.len();
        let mut out = String::new();
        for n in 0..size {
            let line: Vec<String> = (0..size).map(|k| self.get(n, k).to_string()).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    /// Full square as nested arrays in the canonical scalar encoding.
    pub fn to_json(&self) -> Value {
        let size = self.rows.len();
        json!((0..size)
            .map(|n| (0..size).map(|k| self.get(n, k).to_json()).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }

    /// Right-aligned text grid.
    pub fn to_table(&self) -> String {
        let size = self.rows.len();
        let cells: Vec<Vec<String>> = (0..size)
            .map(|n| (0..size).map(|k| self.get(n, k).to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}
