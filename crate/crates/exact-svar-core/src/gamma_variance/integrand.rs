use core::cell::{Cell, RefCell};

use crate::config::EvalConfig;
use crate::kernels::{k_beta_tail_bound, ln_m, saddle_kernel};
use crate::prelude::*;
use crate::quad::integrate;
use crate::result::{DistributionResult, Method};
use crate::specfun::ln_norm_pdf;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Kind {
    Cdf,
    Pdf,
}

/// `z ↦ x^{β−1} K_β(r, z) Π M_{α_j}(cz) φ(z)`, assembled in log space.
pub(super) struct Integrand<'a> {
    groups: &'a [(f64, usize)],
    beta: f64,
    r: f64,
    c: f64,
    ln_pre: f64,
    x: f64,
    kind: Kind,
}

/// One integrand evaluation: value, absolute error, and `ln` of a bound on
/// its magnitude.
#[derive(Debug, Clone, Copy)]
struct Point {
    value: f64,
    err: f64,
    ln_env: f64,
}

impl<'a> Integrand<'a> {
    pub fn new(groups: &'a [(f64, usize)], n: usize, x: f64, kind: Kind) -> Self {
        let a: f64 = groups.iter().map(|&(a, k)| a * k as f64).sum();
        let beta = match kind {
            Kind::Cdf => a / 2.0 + 1.0,
            Kind::Pdf => a / 2.0,
        };
        let nf = n as f64;
        Integrand {
            groups,
            beta,
            r: (nf * x / 2.0).sqrt(),
            c: (2.0 / nf).sqrt(),
            ln_pre: (beta - 1.0) * x.ln(),
            x,
            kind,
        }
    }

    fn ln_weight(&self, z: f64) -> (f64, f64) {
        let mut l = self.ln_pre + ln_norm_pdf(z);
        let mut rel = 0.0;
        for &(a, k) in self.groups {
            let m = ln_m(a, self.c * z);
            l += k as f64 * m.value;
            rel += k as f64 * m.rel_err;
        }
        (l, rel)
    }

    fn at(&self, z: f64) -> Result<Point> {
        let k = saddle_kernel(self.beta, self.r, z)?;
        let (lw, rel) = self.ln_weight(z);
        let l = lw + k.ln_scale;
        let w = l.exp();
        let value = w * k.value;
        Ok(Point {
            value,
            err: w * k.est_error + value.abs() * rel,
            ln_env: l + k.envelope.ln(),
        })
    }

    /// Rigorous tail `∫_Z^∞` from the kernel bound
    /// `|K_β(√x, z)| ≤ (2^β/π)Γ(2β−2) z^{2−2β} x^{1−β}`, integrated with the
    /// local power-law decay of the bounding integrand.
    fn bound_tail(&self, z: f64) -> f64 {
        if self.kind == Kind::Pdf || self.beta <= 1.0 {
            return f64::INFINITY;
        }
        let g = |z: f64| -> f64 {
            let b = k_beta_tail_bound(self.beta, self.x, z).unwrap_or(f64::INFINITY);
            (self.ln_weight(z).0 + b.ln()).exp()
        };
        let (g1, g2) = (g(z), g(2.0 * z));
        let p = (g1 / g2).log2();
        if !(p > 1.0) {
            return f64::INFINITY;
        }
        z * g1 / (p - 1.0)
    }

    /// Truncation points `[z_lo, z_hi]` and the estimated mass outside.
    fn range(&self, cfg: &EvalConfig) -> Result<(f64, f64, f64)> {
        let budget = (cfg.quad_abs_tol / 4.0).ln();
        let mut tail = 0.0;
        let z_lo = match cfg.z_cut_neg {
            Some(z) => z,
            None => {
                let mut z = -8.0f64;
                loop {
                    let p = self.at(z)?;
                    // Gaussian decay: the tail beyond z is below |z|·g(z) once
                    // g falls, generously.
                    if p.ln_env + z.abs().ln() < budget - 2.0 {
                        tail += (p.ln_env + z.abs().ln()).exp();
                        break z;
                    }
                    z *= 1.25;
                    if z < -1e4 {
                        return Err(Error::Numerical {
                            what: "negative truncation search",
                            best: f64::NAN,
                            est_error: f64::INFINITY,
                        });
                    }
                }
            }
        };
        let z_hi = match cfg.z_cut_pos {
            Some(z) => z,
            None => {
                // For small x the mass sits near z ≈ 1/r, where the kernel
                // turns from ≈ 1/Γ(β) to its power-law decay; the envelope
                // is small but rising below that, so no early stop there.
                let z_min = 8f64.max(6.0 / self.r);
                let z_cap = 1e5f64.max(1e3 / self.r);
                let mut z = 8.0f64;
                let mut prev_small = false;
                let mut prev_est = f64::INFINITY;
                loop {
                    let p = self.at(z)?;
                    let est = (p.ln_env + z.ln() + 2f64.ln()).exp();
                    let rigorous = self.bound_tail(z);
                    if rigorous < cfg.quad_abs_tol / 4.0 {
                        tail += rigorous;
                        break z;
                    }
                    // a small but growing envelope means the bulk lies
                    // further out
                    let small = est.ln() < budget - 2.0 && z >= z_min && est < prev_est;
                    prev_est = est;
                    if small && prev_small {
                        tail += est;
                        break z;
                    }
                    prev_small = small;
                    z *= 1.5;
                    if z > z_cap {
                        tail += est;
                        break z;
                    }
                }
            }
        };
        Ok((z_lo, z_hi, tail))
    }

    pub fn integrate(&self, cfg: &EvalConfig, strict: bool) -> Result<DistributionResult> {
        let (z_lo, z_hi, tail) = self.range(cfg)?;
        let mut pts = vec![z_lo];
        for b in [-8.0, -4.0, -2.0, 0.0, 2.0, 4.0, 8.0] {
            if b > z_lo && b < z_hi {
                pts.push(b);
            }
        }
        let mut b = 16.0;
        while b < z_hi {
            pts.push(b);
            b *= 2.0;
        }
        pts.push(z_hi);
        let failure: Cell<Option<Error>> = Cell::new(None);
        let errs: RefCell<Vec<(f64, f64)>> = RefCell::new(Vec::new());
        let q = integrate(
            |z: f64| match self.at(z) {
                Ok(p) => {
                    errs.borrow_mut().push((z, p.err));
                    p.value
                }
                Err(e) => {
                    failure.set(Some(e));
                    0.0
                }
            },
            &pts,
            cfg.quad_abs_tol / 4.0,
            cfg.quad_rel_tol,
            cfg.max_segments,
        );
        if let Some(e) = failure.take() {
            return Err(e);
        }
        // Propagated rounding of the integrand values. The per-node errors
        // are independent, so they add in quadrature with the node spacing
        // as weight.
        let mut e = errs.into_inner();
        e.sort_by(|a, b| a.0.total_cmp(&b.0));
        let kern: f64 = e
            .windows(2)
            .map(|w| {
                let t = 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0);
                t * t
            })
            .sum::<f64>()
            .sqrt();
        let est = q.abs_error + tail + kern;
        let method = match self.kind {
            Kind::Cdf => Method::GammaIntegral,
            Kind::Pdf => Method::GammaDensityIntegral,
        };
        let tol = match self.kind {
            Kind::Cdf => cfg.quad_abs_tol,
            Kind::Pdf => cfg.quad_abs_tol.max(cfg.quad_rel_tol * q.value.abs()),
        };
        if strict && (!q.converged || est > tol) || !q.value.is_finite() {
            return Err(Error::Numerical {
                what: "gamma-parent z integral",
                best: q.value,
                est_error: est,
            });
        }
        Ok(DistributionResult::new(q.value, est, method))
    }
}
