use crate::config::EvalConfig;
use crate::error::domain;
use crate::prelude::*;
use crate::specfun::{erfcx_real, lgamma, reg_lower_gamma, rgamma, Complex64};
use crate::{Error, Result};

/// `w_β(y) = Σ_k y^k / Γ(β + k/2)`, an entire function of `y`.
pub fn w_beta(beta: f64, y: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(domain("beta must be positive and finite"));
    }
    let tol = cfg.series;
    let ay = y.norm();
    if ay == 0.0 {
        return Ok(Complex64::new(rgamma(beta), 0.0));
    }
    let ly = ay.ln();
    let unit = y / ay;
    let k_peak = 2.0 * ay * ay + beta + 5.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut phase = Complex64::new(1.0, 0.0);
    let mut small = 0;
    for k in 0..tol.max_terms {
        let kf = k as f64;
        let t = phase * (kf * ly - lgamma(beta + kf / 2.0)).exp();
        sum += t;
        if t.norm() <= tol.rel_tol * 1e-3 * sum.norm() + tol.abs_tol {
            small += 1;
        } else {
            small = 0;
        }
        if small >= 3 && kf > k_peak {
            return Ok(sum);
        }
        phase *= unit;
    }
    Err(Error::Convergence {
        what: "w_beta series",
        partial: sum.norm(),
        bound: f64::NAN,
        terms: tol.max_terms,
    })
}

/// `w_{1+m}(y) = y^{−2m}(e^{y²}erfc(−y) − Σ_{j<2m} y^j / Γ(1+j/2))` for real `y`.
///
/// The subtraction cancels badly near `y = 0`; this is an oracle, not an
/// evaluator.
pub fn w_beta_integer_closed(m: u32, y: f64) -> f64 {
    if y == 0.0 {
        return rgamma(1.0 + m as f64);
    }
    let mut v = erfcx_real(-y);
    for j in 0..2 * m {
        v -= y.powi(j as i32) * rgamma(1.0 + j as f64 / 2.0);
    }
    v / y.powi(2 * m as i32)
}

/// `w_{1/2+m}(y)` for real `y`, from `w_{1/2}(y) = y e^{y²}erfc(−y) + π^{−1/2}`
/// and `w_{β+1}(y) = (w_β(y) − 1/Γ(β) − y/Γ(β+½)) / y²`.
pub fn w_beta_half_closed(m: u32, y: f64) -> f64 {
    if y == 0.0 {
        return rgamma(0.5 + m as f64);
    }
    let mut w = y * erfcx_real(-y) + rgamma(0.5);
    let mut b = 0.5;
    for _ in 0..m {
        w = (w - rgamma(b) - y * rgamma(b + 0.5)) / (y * y);
        b += 1.0;
    }
    w
}

/// `w_β(y) = e^{y²} y^{−2(β−1)} (P(β−1, y²) + P(β−½, y²))` for `y > 0`,
/// `β > 1`, with `P` the regularized lower incomplete gamma function.
pub fn w_beta_incgamma(beta: f64, y: f64) -> Result<f64> {
    if !(beta > 1.0 && y > 0.0) {
        return Err(domain("the incomplete-gamma form needs beta > 1 and y > 0"));
    }
    let x = Complex64::new(y * y, 0.0);
    let p = reg_lower_gamma(beta - 1.0, x)?.re + reg_lower_gamma(beta - 0.5, x)?.re;
    Ok((y * y - 2.0 * (beta - 1.0) * y.ln()).exp() * p)
}
