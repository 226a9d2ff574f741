//! `M_α(z) = Γ(α)⁻¹ ∫₀^∞ e^{−x² + xz} x^{α−1} dx`.

use super::KernelMethod;
use crate::error::domain;
use crate::prelude::*;
use crate::specfun::{erfcx_real, lgamma, ln_hyp1f1_pos};
use crate::Result;

const LN_2: f64 = core::f64::consts::LN_2;
const LN_SQRT_PI: f64 = 0.572_364_942_924_700_1;

/// `ln M_α(z)` with the strategy used and a relative error estimate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LnM {
    pub value: f64,
    pub strategy: KernelMethod,
    pub rel_err: f64,
}

/// Automatic strategy selection:
/// * `z ≥ 12`: large-argument expansion when it converges, else the power
///   series summed in log space;
/// * `−1 ≤ z < 12`: power series;
/// * `z0 < z < −1`: Taylor stepping of `2M'' − zM' − αM = 0` upward from
///   `z0`, where the negative-argument expansion is accurate (forward
///   stepping is stable: the competing solution decays in that direction);
/// * `z ≤ z0`: negative-argument expansion.
pub(crate) fn ln_m(alpha: f64, z: f64) -> LnM {
    if z >= 12.0 {
        if let Some(v) = ln_m_asymptotic_pos(alpha, z) {
            return LnM {
                value: v,
                strategy: KernelMethod::Asymptotic,
                rel_err: 1e-15 * (1.0 + v.abs()),
            };
        }
        return LnM {
            value: ln_m_series(alpha, z),
            strategy: KernelMethod::PowerSeries,
            rel_err: 1e-14 * (1.0 + z * z),
        };
    }
    if z >= -1.0 {
        return LnM {
            value: ln_m_series(alpha, z),
            strategy: KernelMethod::PowerSeries,
            rel_err: 1e-15 * (1.0 + z * z),
        };
    }
    let mut z0 = -(13.0 + 4.0 * alpha.sqrt());
    loop {
        if z <= z0 {
            if let Some(v) = ln_m_asymptotic_neg(alpha, z) {
                return LnM {
                    value: v,
                    strategy: KernelMethod::Asymptotic,
                    rel_err: 1e-15,
                };
            }
        } else if let (Some(m0), Some(m1)) = (
            ln_m_asymptotic_neg(alpha, z0),
            ln_m_asymptotic_neg(alpha + 1.0, z0),
        ) {
            let v = ode_step(alpha, z0, z, m0, m1);
            return LnM {
                value: v,
                strategy: KernelMethod::OdeTaylor,
                rel_err: 1e-14 * (1.0 + (z - z0).abs()),
            };
        }
        z0 *= 1.5;
    }
}

/// `Σ_k Γ((α+k)/2) z^k / k! / (2Γ(α))`, summed relative to the largest term.
pub(crate) fn ln_m_series(alpha: f64, z: f64) -> f64 {
    let base = -LN_2 - lgamma(alpha);
    if z == 0.0 {
        return lgamma(alpha / 2.0) + base;
    }
    let lz = z.abs().ln();
    let mut l = [lgamma(alpha / 2.0), lgamma((alpha + 1.0) / 2.0) + lz];
    let mut logs: Vec<f64> = Vec::with_capacity(64);
    let mut lmax = f64::NEG_INFINITY;
    let mut k = 0usize;
    loop {
        let lk = l[k % 2];
        logs.push(lk);
        if lk > lmax {
            lmax = lk;
        }
        let kf = k as f64;
        // l_{k+2} = l_k + ln((α+k)/2) + 2 ln|z| − ln((k+1)(k+2))
        l[k % 2] = lk + ((alpha + kf) / 2.0).ln() + 2.0 * lz - ((kf + 1.0) * (kf + 2.0)).ln();
        k += 1;
        let past_peak = kf > z * z + alpha + 4.0;
        if past_peak && lk < lmax - 40.0 && l[k % 2] < lmax - 40.0 {
            break;
        }
    }
    let neg = z < 0.0;
    let mut s = 0.0;
    for (k, lk) in logs.iter().enumerate() {
        let t = (lk - lmax).exp();
        if neg && k % 2 == 1 {
            s -= t;
        } else {
            s += t;
        }
    }
    lmax + s.ln() + base
}

/// `ln M = z²/4 + (α−1)ln(z/2) + ln Σ_m C(α−1, 2m)(2/z)^{2m} Γ(m+½) − ln Γ(α)`.
pub(crate) fn ln_m_asymptotic_pos(alpha: f64, z: f64) -> Option<f64> {
    let q = (2.0 / z) * (2.0 / z);
    let mut c = 1.0;
    let mut g = LN_SQRT_PI.exp();
    let mut qm = 1.0;
    let mut s = 0.0;
    let mut prev = f64::INFINITY;
    for m in 0..200 {
        let mf = m as f64;
        let term = c * g * qm;
        if term.abs() > prev && m > 1 {
            return None;
        }
        s += term;
        if term.abs() <= 1e-17 * s.abs() {
            return Some(z * z / 4.0 + (alpha - 1.0) * (z / 2.0).ln() + s.ln() - lgamma(alpha));
        }
        prev = term.abs();
        c *= (alpha - 1.0 - 2.0 * mf) * (alpha - 2.0 - 2.0 * mf) / ((2.0 * mf + 1.0) * (2.0 * mf + 2.0));
        if c == 0.0 {
            return Some(z * z / 4.0 + (alpha - 1.0) * (z / 2.0).ln() + s.ln() - lgamma(alpha));
        }
        g *= mf + 0.5;
        qm *= q;
    }
    None
}

/// `M ~ |z|^{−α} Σ_j (−1)^j Γ(α+2j) / (Γ(α) j!) |z|^{−2j}` for `z → −∞`.
pub(crate) fn ln_m_asymptotic_neg(alpha: f64, z: f64) -> Option<f64> {
    let z2 = z * z;
    let mut term = 1.0;
    let mut s = 0.0;
    let mut prev = f64::INFINITY;
    for j in 0..400 {
        if term.abs() > prev {
            return None;
        }
        s += term;
        if term.abs() <= 1e-17 * s.abs() {
            return Some(-alpha * z.abs().ln() + s.ln());
        }
        prev = term.abs();
        let jf = j as f64;
        term *= -(alpha + 2.0 * jf) * (alpha + 2.0 * jf + 1.0) / ((jf + 1.0) * z2);
    }
    None
}

/// Integrates the ODE from `z0` to `z1 > z0`, given `ln M_α(z0)` and
/// `ln M_{α+1}(z0)` (`M' = α M_{α+1}`), and returns `ln M_α(z1)`.
fn ode_step(alpha: f64, z0: f64, z1: f64, ln_m0: f64, ln_m1: f64) -> f64 {
    const H: f64 = 0.25;
    let mut scale = ln_m0;
    let mut m = 1.0;
    let mut mp = alpha * (ln_m1 - ln_m0).exp();
    let mut zc = z0;
    let mut c: Vec<f64> = Vec::with_capacity(48);
    while zc < z1 {
        let h = H.min(z1 - zc);
        c.clear();
        c.push(m);
        c.push(mp);
        let mut j = 0usize;
        loop {
            let jf = j as f64;
            let next = (zc * (jf + 1.0) * c[j + 1] + (alpha + jf) * c[j]) / (2.0 * (jf + 1.0) * (jf + 2.0));
            c.push(next);
            j += 1;
            let tail = next.abs() * h.powi(j as i32 + 1);
            if j > 6 && tail < 1e-18 * m.abs() || j > 60 {
                break;
            }
        }
        let mut v = 0.0;
        let mut d = 0.0;
        for (i, ci) in c.iter().enumerate().rev() {
            v = v * h + ci;
            if i > 0 {
                d = d * h + i as f64 * ci;
            }
        }
        m = v;
        mp = d;
        // renormalize to keep m near 1
        let s = m.abs();
        m /= s;
        mp /= s;
        scale += s.ln();
        zc += h;
        if z1 - zc < 1e-14 {
            break;
        }
    }
    scale + m.ln()
}

/// Two-₁F₁ form `(2Γ(α))⁻¹(Γ(α/2)₁F₁(α/2; ½; z²/4) + Γ((α+1)/2) z ₁F₁((α+1)/2; 3/2; z²/4))`
/// evaluated in log space, valid for `z ≥ 0`.
pub(crate) fn ln_m_kummer_pair(alpha: f64, z: f64) -> f64 {
    let x = z * z / 4.0;
    let a = lgamma(alpha / 2.0) + ln_hyp1f1_pos(alpha / 2.0, 0.5, x);
    if z == 0.0 {
        return a - LN_2 - lgamma(alpha);
    }
    let b = lgamma((alpha + 1.0) / 2.0) + z.ln() + ln_hyp1f1_pos((alpha + 1.0) / 2.0, 1.5, x);
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln() - LN_2 - lgamma(alpha)
}

/// `M_α` for integer `α` from `(2Γ(α))⁻¹ √π (d/dz)^{α−1} E(z)`,
/// `E = e^{z²/4} erfc(−z/2)`.
///
/// Derivatives stay in the family `p(z)E + q(z)` because
/// `E' = (z/2)E + 1/√π`; the polynomials are generated exactly.
pub fn m_alpha_integer(alpha: u32, z: f64) -> Result<f64> {
    if alpha == 0 {
        return Err(domain("m_alpha_integer needs a positive integer alpha"));
    }
    let (p, q) = erfc_family(alpha - 1);
    let e = erfcx_real(-z / 2.0);
    let pv = horner(&p, z);
    let qv = horner(&q, z);
    let lg = lgamma(alpha as f64);
    Ok(LN_SQRT_PI.exp() / (2.0 * lg.exp()) * (pv * e + qv))
}

/// Polynomials `(p, q)` with `(d/dz)^d E = pE + q` (coefficients low to high).
pub(crate) fn erfc_family(d: u32) -> (Vec<f64>, Vec<f64>) {
    let inv_sqrt_pi = (-LN_SQRT_PI).exp();
    let mut p = vec![1.0];
    let mut q = vec![0.0];
    for _ in 0..d {
        // p ← p' + (z/2)p ; q ← q' + p/√π
        let mut np = vec![0.0; p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            if i > 0 {
                np[i - 1] += i as f64 * c;
            }
            np[i + 1] += 0.5 * c;
        }
        let mut nq = vec![0.0; q.len().max(p.len())];
        for (i, c) in q.iter().enumerate() {
            if i > 0 {
                nq[i - 1] += i as f64 * c;
            }
        }
        for (i, c) in p.iter().enumerate() {
            nq[i] += c * inv_sqrt_pi;
        }
        p = np;
        q = nq;
    }
    (p, q)
}

fn horner(c: &[f64], z: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, ci| acc * z + ci)
}
