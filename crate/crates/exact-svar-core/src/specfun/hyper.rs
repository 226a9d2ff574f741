use super::series::{Accumulator, SeriesTolerance};
use crate::error::domain;
use crate::prelude::*;
use crate::Result;

fn nonpositive_integer(b: f64) -> bool {
    b <= 0.0 && b == b.floor()
}

/// A series value with its error estimate and the cancellation ratio
/// `max|term| / |sum|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub est_error: f64,
    pub cancellation: f64,
    pub terms: usize,
}

impl SeriesValue {
    fn from_acc(acc: &Accumulator, scale: f64) -> Self {
        SeriesValue {
            value: acc.sum * scale,
            est_error: acc.est_error() * scale.abs(),
            cancellation: acc.cancellation(),
            terms: acc.terms,
        }
    }
}

/// Kummer series `Σ (a)_k x^k / ((b)_k k!)` without any transformation.
pub fn hyp1f1_series(a: f64, b: f64, x: f64, tol: SeriesTolerance) -> Result<SeriesValue> {
    if nonpositive_integer(b) {
        return Err(domain("hyp1f1 needs b not a non-positive integer"));
    }
    let mut acc = Accumulator::new(tol);
    let mut term = 1.0;
    let mut k = 0usize;
    loop {
        if acc.push(term) || term == 0.0 {
            break;
        }
        if acc.exhausted() {
            return Err(acc.fail("1F1 series"));
        }
        let kf = k as f64;
        term *= (a + kf) * x / ((b + kf) * (kf + 1.0));
        k += 1;
    }
    Ok(SeriesValue::from_acc(&acc, 1.0))
}

/// Confluent hypergeometric `₁F₁(a; b; x)`.
///
/// For `x < 0` the Kummer transform `eˣ ₁F₁(b−a; b; −x)` is used so the
/// summed series has a positive argument.
pub fn hyp1f1(a: f64, b: f64, x: f64, tol: SeriesTolerance) -> Result<f64> {
    Ok(hyp1f1_value(a, b, x, tol)?.value)
}

pub fn hyp1f1_value(a: f64, b: f64, x: f64, tol: SeriesTolerance) -> Result<SeriesValue> {
    if nonpositive_integer(b) {
        return Err(domain("hyp1f1 needs b not a non-positive integer"));
    }
    if x == 0.0 {
        return Ok(SeriesValue {
            value: 1.0,
            est_error: 0.0,
            cancellation: 1.0,
            terms: 1,
        });
    }
    if x < 0.0 && !nonpositive_integer(a) {
        let mut v = hyp1f1_series(b - a, b, -x, tol)?;
        let s = x.exp();
        v.value *= s;
        v.est_error *= s;
        return Ok(v);
    }
    hyp1f1_series(a, b, x, tol)
}

/// `ln ₁F₁(a; b; x)` for `x ≥ 0`, `a, b > 0` (all terms positive), safe
/// against overflow.
pub(crate) fn ln_hyp1f1_pos(a: f64, b: f64, x: f64) -> f64 {
    // Locate the largest term, then sum relative to it.
    let mut lt = 0.0f64;
    let mut lmax = 0.0f64;
    let mut k = 0usize;
    let mut logs: Vec<f64> = Vec::with_capacity(64);
    let lx = x.ln();
    loop {
        logs.push(lt);
        if lt > lmax {
            lmax = lt;
        }
        let kf = k as f64;
        if x == 0.0 {
            break;
        }
        lt += ((a + kf) / ((b + kf) * (kf + 1.0))).ln() + lx;
        k += 1;
        if lt < lmax - 40.0 && (a + kf) * x < (b + kf) * (kf + 1.0) {
            break;
        }
    }
    let s: f64 = logs.iter().map(|l| (l - lmax).exp()).sum();
    lmax + s.ln()
}

/// `₀F₁(; b; x) = Σ xᵏ / ((b)_k k!)`.
pub fn hyp0f1(b: f64, x: f64, tol: SeriesTolerance) -> Result<f64> {
    Ok(hyp0f1_value(b, x, tol)?.value)
}

pub fn hyp0f1_value(b: f64, x: f64, tol: SeriesTolerance) -> Result<SeriesValue> {
    if nonpositive_integer(b) {
        return Err(domain("hyp0f1 needs b not a non-positive integer"));
    }
    let mut acc = Accumulator::new(tol);
    let mut term = 1.0;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let growing = x.abs() > (b + kf).abs() * (kf + 1.0);
        if (acc.push(term) && !growing) || term == 0.0 {
            break;
        }
        if acc.exhausted() {
            return Err(acc.fail("0F1 series"));
        }
        term *= x / ((b + kf) * (kf + 1.0));
        k += 1;
    }
    Ok(SeriesValue::from_acc(&acc, 1.0))
}

/// `₀F₂(; b₁, b₂; x) = Σ xᵏ / ((b₁)_k (b₂)_k k!)`.
pub fn hyp0f2(b1: f64, b2: f64, x: f64, tol: SeriesTolerance) -> Result<f64> {
    if nonpositive_integer(b1) || nonpositive_integer(b2) {
        return Err(domain("hyp0f2 needs b1, b2 not non-positive integers"));
    }
    let mut acc = Accumulator::new(tol);
    let mut term = 1.0;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let growing = x.abs() > ((b1 + kf) * (b2 + kf)).abs() * (kf + 1.0);
        if (acc.push(term) && !growing) || term == 0.0 {
            break;
        }
        if acc.exhausted() {
            return Err(acc.fail("0F2 series"));
        }
        term *= x / ((b1 + kf) * (b2 + kf) * (kf + 1.0));
        k += 1;
    }
    Ok(acc.sum)
}
