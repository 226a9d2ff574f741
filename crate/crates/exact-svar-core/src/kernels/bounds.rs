use crate::error::domain;
use crate::prelude::*;
use crate::specfun::lgamma;
use crate::Result;

/// `(2^β/π) Γ(2β−2) z^{−(2β−2)} x^{−(β−1)}`, a bound on `|K_β(√x, z)|` for
/// `z > 0`.
pub fn k_beta_tail_bound(beta: f64, x: f64, z: f64) -> Result<f64> {
    if !(beta > 1.0) {
        return Err(domain("the tail bound needs beta > 1"));
    }
    if !(x > 0.0 && z > 0.0) {
        return Err(domain("the tail bound needs x > 0 and z > 0"));
    }
    let l = beta * core::f64::consts::LN_2 - core::f64::consts::PI.ln() + lgamma(2.0 * beta - 2.0)
        - (2.0 * beta - 2.0) * z.ln()
        - (beta - 1.0) * x.ln();
    Ok(l.exp())
}

/// `1.1 e^{z²/4} Σ_k r^k / (Γ(β+k/2)√k!)`, which dominates `|K_β(r, z)|`.
pub fn k_beta_majorant(beta: f64, r: f64, z: f64) -> Result<f64> {
    if !(beta > 0.0 && r >= 0.0) {
        return Err(domain("the majorant needs beta > 0 and r >= 0"));
    }
    if r == 0.0 {
        return Ok(1.1 * (z * z / 4.0).exp() * (-lgamma(beta)).exp());
    }
    let lr = r.ln();
    let mut logs = Vec::new();
    let mut l = -lgamma(beta);
    let mut lmax = f64::NEG_INFINITY;
    let mut k = 0usize;
    loop {
        logs.push(l);
        lmax = lmax.max(l);
        let kf = k as f64;
        l += lr - lgamma(beta + (kf + 1.0) / 2.0) + lgamma(beta + kf / 2.0) - 0.5 * (kf + 1.0).ln();
        k += 1;
        if l < lmax - 40.0 && kf > 2.0 * r * r {
            break;
        }
    }
    let s: f64 = logs.iter().map(|v| (v - lmax).exp()).sum();
    Ok(1.1 * (z * z / 4.0 + lmax + s.ln()).exp())
}
