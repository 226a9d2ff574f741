use crate::error::domain;
use crate::prelude::*;
use crate::Result;
use num_complex::Complex64;

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("ln_gamma needs a finite positive argument"));
    }
    Ok(lgamma(x))
}

/// Unchecked `ln Γ(x)` for internal use with arguments known to be positive.
#[inline]
pub(crate) fn lgamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `1/Γ(x)` for real `x`, zero at the poles.
pub(crate) fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x > 0.0 && x < 170.0 {
        return 1.0 / libm::tgamma(x);
    }
    let (lg, sign) = libm::lgamma_r(x);
    sign as f64 * (-lg).exp()
}

const MAX_TERMS: usize = 5000;

/// Regularized lower incomplete gamma `P(β, z) = Γ(β)⁻¹ ∫₀ᶻ x^{β−1}e^{−x}dx`
/// along the straight path from 0 (principal branch of `z^β`).
pub fn reg_lower_gamma(beta: f64, z: Complex64) -> Result<Complex64> {
    if !(beta > 0.0) {
        return Err(domain("reg_lower_gamma needs beta > 0"));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(domain("reg_lower_gamma needs a finite argument"));
    }
    if z.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if z.re > 0.0 && z.norm() > beta + 1.0 && z.norm() > 2.0 {
        let q = upper_cf(beta, z)?;
        Ok(Complex64::new(1.0, 0.0) - q)
    } else {
        lower_series(beta, z)
    }
}

/// Regularized upper incomplete gamma `Q(β, x)` for real `x ≥ 0`.
pub fn reg_upper_gamma(beta: f64, x: f64) -> Result<f64> {
    if !(beta > 0.0) || !(x >= 0.0) {
        return Err(domain("reg_upper_gamma needs beta > 0 and x >= 0"));
    }
    let z = Complex64::new(x, 0.0);
    if x > beta + 1.0 && x > 2.0 {
        Ok(upper_cf(beta, z)?.re)
    } else {
        Ok(1.0 - lower_series(beta, z)?.re)
    }
}

fn prefactor(beta: f64, z: Complex64) -> Complex64 {
    // z^β e^{−z} / Γ(β)
    (z.ln() * beta - z - Complex64::new(lgamma(beta), 0.0)).exp()
}

fn lower_series(beta: f64, z: Complex64) -> Result<Complex64> {
    // P = z^β e^{−z} Σ z^k / Γ(β+k+1)
    let mut term = Complex64::new(1.0 / beta, 0.0);
    let mut sum = term;
    for k in 1..MAX_TERMS {
        term = term * z / (beta + k as f64);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            return Ok(prefactor(beta, z) * sum);
        }
    }
    Err(crate::Error::Convergence {
        what: "incomplete gamma series",
        partial: sum.re,
        bound: term.norm(),
        terms: MAX_TERMS,
    })
}

fn upper_cf(beta: f64, z: Complex64) -> Result<Complex64> {
    // Modified Lentz on Γ(β,z) = e^{−z}z^β / (z+1−β− 1(1−β)/(z+3−β− ...))
    // 1e-150 keeps |tiny|² representable for complex division
    let tiny = Complex64::new(1e-150, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut b = z + 1.0 - beta;
    let mut c = Complex64::new(1e150, 0.0);
    let mut d = one / b;
    let mut h = d;
    for i in 1..MAX_TERMS {
        let an = -(i as f64) * (i as f64 - beta);
        b += 2.0;
        d = b + d * an;
        if d.norm() < 1e-150 {
            d = tiny;
        }
        c = b + Complex64::new(an, 0.0) / c;
        if c.norm() < 1e-150 {
            c = tiny;
        }
        d = one / d;
        let del = d * c;
        h *= del;
        if (del - one).norm() < 1e-16 {
            return Ok(prefactor(beta, z) * h);
        }
    }
    Err(crate::Error::Convergence {
        what: "incomplete gamma continued fraction",
        partial: h.re,
        bound: 0.0,
        terms: MAX_TERMS,
    })
}
