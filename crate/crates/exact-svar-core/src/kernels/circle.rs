use super::{KernelMethod, KernelValue};
use crate::dd::{CDd, Dd, DD_PI};
use crate::prelude::*;
use crate::specfun::{lgamma, rgamma};
use crate::Error;
use crate::Result;

/// Radius minimizing the magnitude bound `|z|ρ + ρ²/2 + r²/ρ²` of the
/// integrand (the last term is the growth of `w_β` at `|y| = r/ρ`).
pub(crate) fn default_rho(r: f64, z: f64) -> f64 {
    let a = z.abs();
    let f = |rho: f64| a + rho - 2.0 * r * r / (rho * rho * rho);
    let (mut lo, mut hi) = (1e-8, 1.0);
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

struct Integrand {
    zr: Dd,
    half_rho2: Dd,
    y_mod: Dd,
    even: Vec<Dd>,
    odd: Vec<Dd>,
}

impl Integrand {
    fn new(beta: f64, r: f64, z: f64, rho: f64) -> Self {
        let y = r / rho;
        // number of coefficients until |c_k| y^k < 1e-34 · max
        let ly = y.ln();
        let mut lmax = f64::NEG_INFINITY;
        let mut kmax = 0usize;
        loop {
            let kf = kmax as f64;
            let l = kf * ly - lgamma(beta + kf / 2.0);
            lmax = lmax.max(l);
            if l < lmax - 80.0 && kf > 2.0 * y * y + 4.0 {
                break;
            }
            kmax += 1;
        }
        let mut c = vec![Dd::from_f64(rgamma(beta)), Dd::from_f64(rgamma(beta + 0.5))];
        for k in 0..kmax {
            let next = c[k] / Dd::from_f64(beta + k as f64 / 2.0);
            c.push(next);
        }
        let even = c.iter().step_by(2).copied().collect();
        let odd = c.iter().skip(1).step_by(2).copied().collect();
        Integrand {
            zr: Dd::from_f64(z) * Dd::from_f64(rho),
            half_rho2: Dd::from_f64(rho) * Dd::from_f64(rho) * Dd::from_f64(0.5),
            y_mod: Dd::from_f64(r) / Dd::from_f64(rho),
            even,
            odd,
        }
    }

    /// Even- and odd-coefficient contributions to the real integrand at `ψ`.
    fn eval(&self, psi: Dd) -> (Dd, Dd) {
        let e1 = CDd::cis(psi);
        let e2 = e1 * e1;
        let expo = CDd::ZERO - e1.scale(self.zr) - e2.scale(self.half_rho2);
        let ratio = expo.exp();
        let y = e1.conj().scale(self.y_mod);
        let u = y * y;
        let horner = |c: &[Dd]| {
            let mut acc = CDd::ZERO;
            for ck in c.iter().rev() {
                acc = acc * u + CDd::new(*ck, Dd::ZERO);
            }
            acc
        };
        let ev = ratio * horner(&self.even);
        let od = ratio * y * horner(&self.odd);
        (ev.re, od.re)
    }
}

/// Trapezoid rule on `[0, π]` for the real part of the circle integral,
/// doubling the node count until two successive values agree.
pub(super) fn k_circle(beta: f64, r: f64, z: f64, rho: Option<f64>, rel_tol: f64) -> Result<KernelValue> {
    let rho = rho.unwrap_or_else(|| default_rho(r, z));
    let f = Integrand::new(beta, r, z, rho);
    let mut n = 32usize;
    let mut peak = 0.0f64;
    let mut acc_e = Dd::ZERO;
    let mut acc_o = Dd::ZERO;
    for j in 0..=n {
        let w = if j == 0 || j == n { 0.5 } else { 1.0 };
        let (e, o) = f.eval(DD_PI.mul_f64(j as f64 / n as f64));
        acc_e = acc_e + e.mul_f64(w);
        acc_o = acc_o + o.mul_f64(w);
        peak = peak.max(e.hi.abs()).max(o.hi.abs());
    }
    let mut prev = (acc_e + acc_o).to_f64() / n as f64;
    loop {
        let m = 2 * n;
        for j in (1..m).step_by(2) {
            let (e, o) = f.eval(DD_PI.mul_f64(j as f64 / m as f64));
            acc_e = acc_e + e;
            acc_o = acc_o + o;
            peak = peak.max(e.hi.abs()).max(o.hi.abs());
        }
        n = m;
        let se = acc_e.to_f64() / n as f64;
        let so = acc_o.to_f64() / n as f64;
        let cur = (acc_e + acc_o).to_f64() / n as f64;
        let diff = (cur - prev).abs();
        let floor = 1e-30 * peak;
        if diff <= rel_tol * cur.abs() || diff <= floor {
            // both coefficient chains start from f64 values of 1/Γ, good to
            // a few ulps, and their sums may cancel
            return Ok(KernelValue {
                value: cur,
                est_error: diff + floor + 8.0 * f64::EPSILON * (se.abs() + so.abs()),
                method: KernelMethod::Contour,
                terms_used: n + 1,
            });
        }
        prev = cur;
        if n >= 1 << 16 {
            break;
        }
    }
    Err(Error::Numerical {
        what: "K_beta circle contour",
        best: prev,
        est_error: f64::NAN,
    })
}
