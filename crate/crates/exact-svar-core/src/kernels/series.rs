use super::{KernelMethod, KernelValue};
use crate::prelude::*;
use crate::specfun::{hyp0f1_value, lgamma, Accumulator, NormalizedHermiteIter, SeriesTolerance};
use crate::Result;

fn finish(acc: &Accumulator, method: KernelMethod, extra_err: f64) -> KernelValue {
    // est_error already scales with the largest term, so cancellation is
    // reflected without a separate inflation factor.
    KernelValue {
        value: acc.sum,
        est_error: acc.est_error() + extra_err,
        method,
        terms_used: acc.terms,
    }
}

/// Hermite series with normalized polynomials `He_k/√k!` and coefficients
/// `r^k / (Γ(β+k/2)√k!)`, both bounded, so nothing overflows.
pub(super) fn k_hermite(beta: f64, r: f64, z: f64, tol: SeriesTolerance) -> Result<KernelValue> {
    let lr = r.ln();
    let mut le = [-lgamma(beta), lr - lgamma(beta + 0.5)];
    let k_min = (2.0 * r + 5.0) as usize;
    let mut acc = Accumulator::new(tol);
    for (k, h) in NormalizedHermiteIter::new(z).enumerate() {
        let kf = k as f64;
        let c = le[k % 2].exp();
        let t = if k % 2 == 1 { -h * c } else { h * c };
        le[k % 2] += 2.0 * lr - (beta + kf / 2.0).ln() - 0.5 * ((kf + 1.0) * (kf + 2.0)).ln();
        if acc.push(t) && k >= k_min {
            break;
        }
        if acc.exhausted() {
            return Err(acc.fail("K_beta Hermite series"));
        }
    }
    Ok(finish(&acc, KernelMethod::HermiteSeries, 0.0))
}

/// `Σ ₀F₁(β+k/2; −r²/2)(−rz)^k / (Γ(β+k/2) k!)`; each `₀F₁` is bounded by 1.
pub(super) fn k_zero_f_one(beta: f64, r: f64, z: f64, tol: SeriesTolerance) -> Result<KernelValue> {
    let x = -r * r / 2.0;
    let a = r * z.abs();
    let la = if a > 0.0 { a.ln() } else { f64::NEG_INFINITY };
    let k_min = 2.0 * (1.5 * a).powf(2.0 / 3.0) + 5.0;
    let mut acc = Accumulator::new(tol);
    let mut lcoef = -lgamma(beta);
    let mut extra = 0.0;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let f = hyp0f1_value(beta + kf / 2.0, x, tol)?;
        let c = lcoef.exp();
        let sign = if z > 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
        extra += c * f.est_error;
        let stop = acc.push(sign * c * f.value);
        if (stop && kf >= k_min) || a == 0.0 {
            break;
        }
        if acc.exhausted() {
            return Err(acc.fail("K_beta 0F1 series"));
        }
        lcoef += la - (kf + 1.0).ln() + lgamma(beta + kf / 2.0) - lgamma(beta + (kf + 1.0) / 2.0);
        k += 1;
    }
    Ok(finish(&acc, KernelMethod::ZeroFOneSeries, extra))
}
