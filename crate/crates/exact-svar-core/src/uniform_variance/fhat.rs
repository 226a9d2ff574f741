use crate::prelude::*;
use crate::quad::{fixed_panels, integrate};
use crate::specfun::{erf_complex, erfc_complex, erfc_real, Complex64};
use crate::{Error, FourierPlan, Result};
use core::f64::consts::PI;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Upper limit of the outer integral: `erfc(y)ⁿ` is below `ε·2⁻⁵⁰` there.
const Y_UP: f64 = 6.5;

#[inline]
fn check_branch(z: Complex64) {
    debug_assert!(
        z.im.abs() <= z.re.abs() * (1.0 + 1e-12) + 1e-300,
        "erf argument {z} outside |Im z| <= |Re z|"
    );
}

/// Characteristic function `E e^{itQ}` of `Q` for `n` uniform variables,
/// from the shifted-path representation.
///
/// `√(−it)` is the principal root, of argument `∓π/4` for `t ≷ 0`, so
/// negative `t` give `conj(f̂(|t|))` up to rounding.
pub fn fhat(n: usize, t: f64, plan: &FourierPlan) -> Result<Complex64> {
    if n < 3 {
        return Err(crate::error::domain("fhat needs n >= 3"));
    }
    if t == 0.0 || !t.is_finite() {
        return Err(crate::error::domain("fhat needs a finite nonzero t"));
    }
    plan.validate()?;
    let nf = n as f64;
    let ni = n as i32;
    // h = √(−it), argument −π/4
    let sign = t.signum();
    let t = t.abs();
    let h = Complex64::new(t.sqrt(), -sign * t.sqrt()) * core::f64::consts::FRAC_1_SQRT_2;
    // √n (√π/2)^{n−1} (i/t)^{n/2}
    let ln_mod = 0.5 * nf.ln() + (nf - 1.0) * (0.5 * SQRT_PI).ln() - 0.5 * nf * t.ln();
    let pre = Complex64::from_polar(ln_mod.exp(), sign * PI * nf / 4.0);
    // absolute accuracy asked of f̂ itself
    let target = 5e-16 / pre.norm();

    // ∫₀^∞ (erf(y+h) − erf(y))ⁿ dy written as (erfc(y) − erfc(y+h))ⁿ
    let outer = |y: f64| {
        let z = Complex64::new(y, 0.0) + h;
        check_branch(z);
        (Complex64::new(erfc_real(y), 0.0) - erfc_complex(z)).powi(ni)
    };
    let m = plan.quad_nodes_outer;
    let pts: Vec<f64> = (0..=m).map(|i| Y_UP * i as f64 / m as f64).collect();
    let y = integrate(outer, &pts, target, 1e-14, 4000);

    // ½h ∫₀¹ (erf(½h(1+u)) + erf(½h(1−u)))ⁿ du. The phase t(1+u)²/4 of
    // erfc(½h(1+u)) turns 3t/(8π) times over the interval and its square
    // twice as often; two panels per turn let the embedded Gauss rule
    // resolve both, so |Kronrod − Gauss| is a safe error bound.
    let half = h * 0.5;
    let inner = |u: f64| {
        let a = half * (1.0 + u);
        let b = half * (1.0 - u);
        check_branch(a);
        check_branch(b);
        (erf_complex(a) + erf_complex(b)).powi(ni)
    };
    let panels = plan.quad_nodes_unit.max((3.0 * t / (4.0 * PI)).ceil() as usize);
    let pts: Vec<f64> = (0..=panels).map(|i| i as f64 / panels as f64).collect();
    let tol = target / half.norm();
    let (mut u_val, mut u_err) = fixed_panels(inner, &pts);
    if u_err > tol.max(1e-14 * u_val.norm()) {
        let u = integrate(inner, &pts, tol, 1e-14, 4 * panels + 4000);
        if !u.converged && pre.norm() * half.norm() * u.abs_error > 1e-12 {
            return Err(Error::Numerical {
                what: "characteristic function",
                best: (pre * (y.value + half * u.value)).im,
                est_error: pre.norm() * half.norm() * u.abs_error,
            });
        }
        u_val = u.value;
        u_err = u.abs_error;
    }

    let sum = y.value + half * u_val;
    let err = y.abs_error + half.norm() * u_err;
    let value = pre * sum;
    let est = pre.norm() * err;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Numerical {
            what: "characteristic function",
            best: f64::NAN,
            est_error: f64::INFINITY,
        });
    }
    if est > 1e-8 && !y.converged {
        return Err(Error::Numerical {
            what: "characteristic function",
            best: value.im,
            est_error: est,
        });
    }
    Ok(value)
}
