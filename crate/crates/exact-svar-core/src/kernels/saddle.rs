//! `K_β(r, z) = (2πi)⁻¹ ∫ e^{H(τ)} dτ`, `H(τ) = τ − β ln τ − rz τ^{−1/2} − r²/(2τ)`,
//! the Laplace inversion of `t^{−β} φ(z + t^{−1/2}) / φ(z)` rescaled by `x`.
//!
//! The path is the parabola `τ(u) = μ(1+iu)²`, i.e. `√τ = √μ (1+iu)`, whose
//! vertex is chosen from the saddle points of `H`. On it the integrand
//! decays like `e^{−μu²}` and the trapezoid rule converges geometrically.

use crate::prelude::*;
use crate::specfun::Complex64;
use crate::{Error, Result};

use core::f64::consts::PI;

/// A kernel value `value · e^{ln_scale}` that may lie outside the `f64`
/// range, with `est_error` and the envelope `(1/π)∫|e^{H}τ'|` on the same
/// scale. `pair` holds `K_{β−1}` when requested.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ScaledKernel {
    pub value: f64,
    pub est_error: f64,
    #[cfg_attr(not(test), allow(dead_code))]
    pub pair: Option<(f64, f64)>,
    pub ln_scale: f64,
    pub envelope: f64,
    pub nodes: usize,
}

/// Roots of `s⁴ + c2 s² + c1 s + c0` by Aberth iteration with Newton polish.
pub(crate) fn quartic_roots(c2: f64, c1: f64, c0: f64) -> [Complex64; 4] {
    let p = |s: Complex64| ((s * s + c2) * s + c1) * s + c0;
    let dp = |s: Complex64| (s * s * 4.0 + 2.0 * c2) * s + c1;
    let rad = 1.5 * c2.abs().sqrt().max(c1.abs().cbrt()).max(c0.abs().sqrt().sqrt()) + 0.1;
    let mut z: [Complex64; 4] =
        core::array::from_fn(|k| Complex64::from_polar(rad, 2.0 * PI * k as f64 / 4.0 + 0.4));
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..4 {
            let d = dp(z[k]);
            let pv = p(z[k]);
            if pv == Complex64::new(0.0, 0.0) {
                continue;
            }
            let w = pv / d;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..4 {
                if j != k {
                    s += (z[k] - z[j]).inv();
                }
            }
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let d = dp(*zk);
            if d.norm() > 0.0 {
                let step = p(*zk) / d;
                if step.is_finite() {
                    *zk -= step;
                }
            }
        }
    }
    z
}

struct Path {
    beta: f64,
    rz: f64,
    half_r2: f64,
    sqrt_mu: f64,
}

impl Path {
    /// `(H(τ(u)), τ(u), τ'(u), magnitude of the terms of H)`.
    #[inline]
    fn at(&self, u: f64) -> (Complex64, Complex64, Complex64, f64) {
        let s = Complex64::new(self.sqrt_mu, self.sqrt_mu * u);
        let tau = s * s;
        let inv_s = s.inv();
        let ln_s = s.ln();
        let h = tau - ln_s * (2.0 * self.beta) - inv_s * self.rz - inv_s * inv_s * self.half_r2;
        let mag = tau.norm() + 2.0 * self.beta * ln_s.norm() + (inv_s * self.rz).norm()
            + (inv_s * inv_s * self.half_r2).norm();
        // dτ/du = 2 s · i√μ
        let dtau = s * Complex64::new(0.0, 2.0 * self.sqrt_mu);
        (h, tau, dtau, mag)
    }

    /// End of the path where `Re H` has fallen 45 below `h_ref`, and the
    /// largest `Re H` found on a coarse scan of `[0, U]`.
    fn extent(&self) -> (f64, f64) {
        let h0 = self.at(0.0).0.re;
        let mut u_end = 1.0;
        while self.at(u_end).0.re - h0 > -45.0 && u_end < 1e6 {
            u_end *= 1.5;
        }
        loop {
            let mut mx = h0;
            for j in 1..=64 {
                mx = mx.max(self.at(u_end * j as f64 / 64.0).0.re);
            }
            if self.at(u_end).0.re - mx < -40.0 || u_end >= 1e6 {
                return (u_end, mx);
            }
            u_end *= 1.5;
        }
    }
}

fn choose_path(beta: f64, r: f64, z: f64) -> (Path, f64, f64) {
    let roots = quartic_roots(-beta, r * z / 2.0, r * r / 2.0);
    let mut mus: Vec<f64> = roots
        .iter()
        .filter(|s| s.re > 1e-12 && s.im >= -1e-12)
        .map(|s| s.re * s.re)
        .collect();
    if mus.is_empty() {
        mus.push(beta.max(1.0));
    }
    let mut best: Option<(Path, f64, f64)> = None;
    for mu in mus {
        let path = Path {
            beta,
            rz: r * z,
            half_r2: r * r / 2.0,
            sqrt_mu: mu.sqrt(),
        };
        let (u_end, mx) = path.extent();
        if best.as_ref().map_or(true, |b| mx < b.2) {
            best = Some((path, u_end, mx));
        }
    }
    best.unwrap()
}

#[derive(Default)]
struct Sums {
    k: Complex64,
    k_pair: Complex64,
    env: f64,
    /// `Σ|g|·|H terms|`, the rounding scale of the sum
    env_h: f64,
}

impl Sums {
    fn add(&mut self, path: &Path, ln_scale: f64, u: f64, w: f64, pair: bool) {
        let (h, tau, dtau, mag) = path.at(u);
        let g = (h - ln_scale).exp() * dtau * w;
        self.k += g;
        if pair {
            self.k_pair += g * tau;
        }
        self.env += g.norm();
        self.env_h += g.norm() * (1.0 + mag);
    }
}

fn run(beta: f64, r: f64, z: f64, pair: bool) -> Result<ScaledKernel> {
    const MAX_NODES: usize = 1 << 15;
    let (path, u_end, ln_scale) = choose_path(beta, r, z);
    let mut n = 64usize;
    let mut acc = Sums::default();
    for j in 0..=n {
        let w = if j == 0 { 0.5 } else { 1.0 };
        acc.add(&path, ln_scale, u_end * j as f64 / n as f64, w, pair);
    }
    let mut prev = (acc.k.im, acc.k_pair.im);
    loop {
        let m = 2 * n;
        for j in (1..m).step_by(2) {
            acc.add(&path, ln_scale, u_end * j as f64 / m as f64, 1.0, pair);
        }
        n = m;
        let h = u_end / n as f64;
        let cur = (acc.k.im * h / PI, acc.k_pair.im * h / PI);
        let d1 = (cur.0 - prev.0 * 2.0 * h / PI).abs();
        let d2 = (cur.1 - prev.1 * 2.0 * h / PI).abs();
        let envelope = acc.env * h / PI;
        // |τ| on the path is at most μ(1+U²)
        let tau_max = path.sqrt_mu * path.sqrt_mu * (1.0 + u_end * u_end);
        let round = 2.0 * f64::EPSILON * acc.env_h * h / PI;
        let ok1 = d1 <= round.max(1e-15 * envelope);
        let ok2 = !pair || d2 <= round.max(1e-15 * envelope) * tau_max;
        if ok1 && ok2 {
            return Ok(ScaledKernel {
                value: cur.0,
                est_error: d1 + round,
                pair: pair.then_some((cur.1, d2 + round * tau_max)),
                ln_scale,
                envelope,
                nodes: n + 1,
            });
        }
        if n >= MAX_NODES {
            return Err(Error::Numerical {
                what: "K_beta saddle contour",
                best: cur.0 * ln_scale.exp(),
                est_error: d1 * ln_scale.exp(),
            });
        }
        prev = (acc.k.im, acc.k_pair.im);
    }
}

/// `K_β(r, z)` in scaled form.
pub(crate) fn k_saddle(beta: f64, r: f64, z: f64) -> Result<ScaledKernel> {
    run(beta, r, z, false)
}

/// `K_β(r, z)` and `K_{β−1}(r, z)` from one path (the latter integrand
/// carries an extra factor `τ`). Only exercised by the tests, which use it
/// to check the path against the `β−1` recurrence.
#[cfg(test)]
pub(crate) fn k_saddle_pair(beta: f64, r: f64, z: f64) -> Result<ScaledKernel> {
    run(beta, r, z, true)
}
