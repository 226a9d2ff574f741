use super::{KernelMethod, KernelValue};
use crate::config::EvalConfig;
use crate::prelude::*;
use crate::quad::integrate;
use crate::specfun::{hyp0f2, rgamma};
use crate::{Error, Result};

use core::f64::consts::{FRAC_PI_2, PI};

/// `K_β(r, z) = (2/√π) ∫₀^{π/2} [₀F₂(½, β−½; X)/Γ(β−½) − rz sinθ ₀F₂(3/2, β; X)/Γ(β)]
///   (sin²θ)^{β−1} cos(r√2 cosθ) dθ`, `X = r²z² sin²θ / 4`, for `β > ½`.
///
/// For `β < 1` the endpoint singularity is removed with `θ = (π/2) s^m`,
/// `m = 1/(2β−1)`.
pub(super) fn k_bessel(beta: f64, r: f64, z: f64, cfg: &EvalConfig) -> Result<KernelValue> {
    let tol = cfg.series;
    let g1 = rgamma(beta - 0.5);
    let g2 = rgamma(beta);
    let pref = 2.0 / PI.sqrt();
    let mut peak = 0.0f64;
    let mut failure = None;
    let mut body = |theta: f64, weight: f64| -> f64 {
        let s = theta.sin();
        let x = r * r * z * z * s * s / 4.0;
        let a = match hyp0f2(0.5, beta - 0.5, x, tol) {
            Ok(v) => v * g1,
            Err(e) => {
                failure = Some(e);
                return 0.0;
            }
        };
        let b = match hyp0f2(1.5, beta, x, tol) {
            Ok(v) => r * z * s * v * g2,
            Err(e) => {
                failure = Some(e);
                return 0.0;
            }
        };
        let c = (r * core::f64::consts::SQRT_2 * theta.cos()).cos();
        peak = peak.max((a.abs() + b.abs()) * weight.abs());
        pref * (a - b) * weight * c
    };
    let res = if beta >= 1.0 {
        integrate(
            &mut |t: f64| {
                let s = t.sin();
                let w = (s * s).powf(beta - 1.0);
                body(t, w)
            },
            &[0.0, FRAC_PI_2],
            cfg.quad_abs_tol * 1e-3,
            cfg.quad_rel_tol,
            cfg.max_segments,
        )
    } else {
        let m = 1.0 / (2.0 * beta - 1.0);
        integrate(
            &mut |s: f64| {
                let theta = FRAC_PI_2 * s.powf(m);
                // (sin θ)^{2β−2} dθ/ds with the s-power cancelled exactly
                let sinc = if theta == 0.0 { 1.0 } else { theta.sin() / theta };
                let w = sinc.powf(2.0 * beta - 2.0) * FRAC_PI_2.powf(2.0 * beta - 1.0) * m;
                body(theta, w)
            },
            &[0.0, 1.0],
            cfg.quad_abs_tol * 1e-3,
            cfg.quad_rel_tol,
            cfg.max_segments,
        )
    };
    if let Some(e) = failure {
        return Err(e);
    }
    let est = res.abs_error + 8.0 * f64::EPSILON * peak * pref;
    if !res.converged {
        return Err(Error::Numerical {
            what: "K_beta Bessel integral",
            best: res.value,
            est_error: est,
        });
    }
    Ok(KernelValue {
        value: res.value,
        est_error: est,
        method: KernelMethod::BesselIntegral,
        terms_used: res.evaluations,
    })
}
