//! The moment function `M_α` and the kernel `K_β(r, z)` with `w_β`, each
//! with several independent evaluation strategies, plus the bounds used for
//! truncation.

mod bessel;
mod bounds;
mod circle;
mod m_alpha;
mod saddle;
mod series;
mod w_beta;

pub use bounds::{k_beta_majorant, k_beta_tail_bound};
pub use m_alpha::m_alpha_integer;
pub use w_beta::{w_beta, w_beta_half_closed, w_beta_incgamma, w_beta_integer_closed};

pub(crate) use m_alpha::{ln_m, LnM};
pub(crate) use saddle::{k_saddle as saddle_kernel, ScaledKernel};
#[cfg(test)]
pub(crate) use saddle::k_saddle_pair;

use crate::config::EvalConfig;
use crate::error::domain;
use crate::prelude::*;
use crate::specfun::rgamma;
use crate::{Error, Result};

/// Evaluation strategy. The first group selects a `K_β` method; the second
/// labels how `M_α` was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelMethod {
    /// `Σ He_k(z)(−r)^k / (Γ(β+k/2) k!)`.
    HermiteSeries,
    /// `Σ ₀F₁(β+k/2; −r²/2)(−rz)^k / (Γ(β+k/2) k!)`.
    ZeroFOneSeries,
    /// Circle integral of `φ(z+ρe^{iψ}) w_β(r e^{−iψ}/ρ) / φ(z)`, trapezoid
    /// rule in double-double arithmetic.
    Contour,
    /// Single integral of two `₀F₂` functions over `[0, π/2]`, `β > ½`.
    BesselIntegral,
    /// Inverse Laplace integral along a parabola through the saddle point.
    SaddleContour,
    /// Resolve per call; always the saddle contour for `r > 0`.
    Auto,
    /// `M_α` power series.
    PowerSeries,
    /// `M_α` from two Kummer functions.
    KummerPair,
    /// `M_α` large-argument expansion.
    Asymptotic,
    /// `M_α` by Taylor stepping of its differential equation.
    OdeTaylor,
    /// `M_α` for integer `α` from derivatives of `e^{z²/4} erfc(−z/2)`.
    ErfcClosedForm,
}

impl KernelMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            KernelMethod::HermiteSeries => "hermite_series",
            KernelMethod::ZeroFOneSeries => "zero_f_one_series",
            KernelMethod::Contour => "contour",
            KernelMethod::BesselIntegral => "bessel_integral",
            KernelMethod::SaddleContour => "saddle_contour",
            KernelMethod::Auto => "auto",
            KernelMethod::PowerSeries => "power_series",
            KernelMethod::KummerPair => "kummer_pair",
            KernelMethod::Asymptotic => "asymptotic",
            KernelMethod::OdeTaylor => "ode_taylor",
            KernelMethod::ErfcClosedForm => "erfc_closed_form",
        }
    }

    /// Parses the names produced by [`KernelMethod::as_str`] for the `K_β`
    /// selectors.
    pub fn parse_kernel(s: &str) -> Option<KernelMethod> {
        Some(match s {
            "hermite_series" | "hermite" => KernelMethod::HermiteSeries,
            "zero_f_one_series" | "0f1" => KernelMethod::ZeroFOneSeries,
            "contour" => KernelMethod::Contour,
            "bessel_integral" | "bessel" => KernelMethod::BesselIntegral,
            "saddle_contour" | "saddle" => KernelMethod::SaddleContour,
            "auto" => KernelMethod::Auto,
            _ => return None,
        })
    }

    pub(crate) fn is_kernel_selector(&self) -> bool {
        matches!(
            self,
            KernelMethod::HermiteSeries
                | KernelMethod::ZeroFOneSeries
                | KernelMethod::Contour
                | KernelMethod::BesselIntegral
                | KernelMethod::SaddleContour
                | KernelMethod::Auto
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: f64,
    pub est_error: f64,
    pub method: KernelMethod,
    pub terms_used: usize,
}

fn check_alpha(alpha: f64, z: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(domain("alpha must be positive and finite"));
    }
    if !z.is_finite() {
        return Err(domain("z must be finite"));
    }
    Ok(())
}

/// `M_α(z) = Γ(α)⁻¹ ∫₀^∞ e^{−x²} x^{α−1} e^{xz} dx`.
///
/// Overflows to `+∞` once `ln M_α(z) > 709`; use [`log_m_alpha`] there.
pub fn m_alpha(alpha: f64, z: f64, cfg: &EvalConfig) -> Result<KernelValue> {
    let _ = cfg;
    check_alpha(alpha, z)?;
    let l = ln_m(alpha, z);
    let v = l.value.exp();
    Ok(KernelValue {
        value: v,
        est_error: v * l.rel_err,
        method: l.strategy,
        terms_used: 0,
    })
}

/// `ln M_α(z)`, finite for every finite `z`.
pub fn log_m_alpha(alpha: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    let _ = cfg;
    check_alpha(alpha, z)?;
    Ok(ln_m(alpha, z).value)
}

/// `M_α(z)` by the requested strategy (for cross-checks); `Auto` is the same
/// as [`m_alpha`].
pub fn m_alpha_with(alpha: f64, z: f64, method: KernelMethod) -> Result<f64> {
    check_alpha(alpha, z)?;
    match method {
        KernelMethod::Auto => Ok(ln_m(alpha, z).value.exp()),
        KernelMethod::PowerSeries => Ok(m_alpha::ln_m_series(alpha, z).exp()),
        KernelMethod::KummerPair => {
            if z < 0.0 {
                return Err(domain("the Kummer pair form is used for z >= 0"));
            }
            Ok(m_alpha::ln_m_kummer_pair(alpha, z).exp())
        }
        KernelMethod::Asymptotic => {
            let v = if z > 0.0 {
                m_alpha::ln_m_asymptotic_pos(alpha, z)
            } else {
                m_alpha::ln_m_asymptotic_neg(alpha, z)
            };
            v.map(f64::exp).ok_or(Error::Convergence {
                what: "M_alpha asymptotic expansion",
                partial: f64::NAN,
                bound: f64::NAN,
                terms: 0,
            })
        }
        KernelMethod::ErfcClosedForm => {
            if alpha != alpha.floor() || alpha > 1e6 {
                return Err(domain("the erfc closed form needs an integer alpha"));
            }
            m_alpha_integer(alpha as u32, z)
        }
        other => Err(Error::Unsupported(format!(
            "{} is not an M_alpha strategy",
            other.as_str()
        ))),
    }
}

/// `K_β(r, z) = Σ_k He_k(z)(−r)^k / (Γ(β+k/2) k!)`.
pub fn k_beta(beta: f64, r: f64, z: f64, method: KernelMethod, cfg: &EvalConfig) -> Result<KernelValue> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(domain("beta must be positive and finite"));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(domain("r must be non-negative and finite"));
    }
    if !z.is_finite() {
        return Err(domain("z must be finite"));
    }
    if !method.is_kernel_selector() {
        return Err(Error::Unsupported(format!(
            "{} is not a K_beta method",
            method.as_str()
        )));
    }
    if method == KernelMethod::BesselIntegral && beta <= 0.5 {
        return Err(domain("the Bessel integral needs beta > 1/2"));
    }
    if r == 0.0 {
        return Ok(KernelValue {
            value: rgamma(beta),
            est_error: f64::EPSILON * rgamma(beta).abs(),
            method: if method == KernelMethod::Auto {
                KernelMethod::SaddleContour
            } else {
                method
            },
            terms_used: 1,
        });
    }
    match method {
        KernelMethod::HermiteSeries => series::k_hermite(beta, r, z, cfg.series),
        KernelMethod::ZeroFOneSeries => series::k_zero_f_one(beta, r, z, cfg.series),
        KernelMethod::Contour => circle::k_circle(beta, r, z, cfg.contour_rho, cfg.series.rel_tol),
        KernelMethod::BesselIntegral => bessel::k_bessel(beta, r, z, cfg),
        KernelMethod::SaddleContour | KernelMethod::Auto => {
            let s = saddle::k_saddle(beta, r, z)?;
            let f = s.ln_scale.exp();
            Ok(KernelValue {
                value: s.value * f,
                est_error: s.est_error * f,
                method: KernelMethod::SaddleContour,
                terms_used: s.nodes,
            })
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests;
