//! Floating-point spot checks of the trigonometric forms, at `x = 2cos t`.
//!
//! Nothing here feeds a verdict. The exact side is still evaluated exactly,
//! at the binary value of `2cos t`, and rounded once at the end.

use std::f64::consts::PI;

use crate::families::FamilyCache;
use crate::polycore::{QuadScalar, Rational, ToFloat};

use super::catalog::{lookup, Claim};
use super::IdentityError;

pub const DEFAULT_TRIG_MAX_INDEX: usize = 8;

/// Cosine/sine forms of a catalog entry, as functions of its running index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigForm {
    /// `4 + 8·Σ_{k=k_lo}^{m−1} cos(2kt) + 2cos(2mt)`.
    EvenCosSum { k_lo: i64 },
    /// `8·Σ_{k=k_lo}^{m−1} cos((2k+1)t) + 2cos((2m+1)t)`.
    OddCosSum { k_lo: i64 },
    /// `sin((n+1)t)/sin t`, with the limit `n+1` where `sin t = 0`.
    SinRatio,
}

impl TrigForm {
    pub fn eval(&self, idx: i64, t: f64) -> f64 {
        match *self {
            TrigForm::EvenCosSum { k_lo } => {
                let s: f64 = (k_lo..idx).map(|k| (2.0 * k as f64 * t).cos()).sum();
                4.0 + 8.0 * s + 2.0 * (2.0 * idx as f64 * t).cos()
            }
            TrigForm::OddCosSum { k_lo } => {
                let s: f64 = (k_lo..idx).map(|k| ((2 * k + 1) as f64 * t).cos()).sum();
                8.0 * s + 2.0 * ((2 * idx + 1) as f64 * t).cos()
            }
            TrigForm::SinRatio => {
                let st = t.sin();
                if st.abs() < 1e-12 {
                    // limit at t = 0 or π
                    let sign = if t.cos() > 0.0 || idx % 2 == 0 { 1.0 } else { -1.0 };
                    sign * (idx + 1) as f64
                } else {
                    ((idx + 1) as f64 * t).sin() / st
                }
            }
        }
    }
}

/// `(j + 1/2)·π/16` for `j = 0..16`.
pub fn default_angles() -> Vec<f64> {
    (0..16).map(|j| (j as f64 + 0.5) * PI / 16.0).collect()
}

/// Largest `|left(2cos t) − trig(t)|` over the samples and over running
/// indices from the entry's minimum to `max_index`.
pub fn trig_spot_check(id: &str, t_samples: &[f64], max_index: usize) -> Result<f64, IdentityError> {
    let entry = lookup(id).ok_or_else(|| IdentityError::UnknownId(id.to_string()))?;
    let form = entry.trig.ok_or_else(|| IdentityError::NoTrigForm(entry.id.to_string()))?;
    let left = match &entry.claim {
        Claim::Poly { left, .. } => left,
        Claim::Matrix { .. } => return Err(IdentityError::NoTrigForm(entry.id.to_string())),
    };
    let cache = FamilyCache::new();
    let mut worst = 0.0f64;
    for idx in entry.min_index..=max_index.max(entry.min_index) {
        let poly = left.eval(idx as i64, &cache)?;
        for &t in t_samples {
            let x = Rational::from_float(2.0 * t.cos()).ok_or_else(|| IdentityError::NonFiniteSample(t.to_string()))?;
            let exact = poly.eval(&QuadScalar::from(x)).to_float();
            worst = worst.max((exact - form.eval(idx as i64, t)).abs());
        }
    }
    Ok(worst)
}
