//! Exact distribution of `Q` for i.i.d. Uniform[0, 1] samples.
//!
//! For `n ≥ 3` the distribution function is a cosine series on
//! `[0, Q_max]` whose coefficients are values of the characteristic
//! function at `t_k = kπ/Q_max`. The coefficients decay like a power of
//! `k` set by the behavior of the density at 0; that power law is summed
//! in closed form beyond the last computed coefficient.

mod fhat;
mod lerch;
mod series;
mod simple_stat;

#[cfg(test)]
mod tests;

pub use fhat::fhat;
pub use series::{CosineSeries, TailTerm};
pub use simple_stat::{simple_stat_cdf, SimpleStat};

use crate::error::domain;
use crate::prelude::*;
use crate::quad::integrate;
use crate::specfun::{lgamma, norm_cdf, norm_pdf};
use crate::{DistributionResult, Error, FourierPlan, Method, Result, UniformParent};
use core::f64::consts::PI;

/// Largest attainable value of `Q`: `n/4` for even `n`, `(n²−1)/(4n)` for odd.
pub fn q_max(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(domain("sample size must be at least 2"));
    }
    let nf = n as f64;
    Ok(if n % 2 == 0 {
        nf / 4.0
    } else {
        (nf * nf - 1.0) / (4.0 * nf)
    })
}

/// Mean and variance of `Q`.
pub fn moments(n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(domain("sample size must be at least 2"));
    }
    let nf = n as f64;
    Ok(((nf - 1.0) / 12.0, (nf - 1.0) * (2.0 * nf + 3.0) / (360.0 * nf)))
}

/// Normal approximation `Φ((x − E Q)/sd Q)`.
pub fn normal_approx_cdf(n: usize, x: f64) -> Result<f64> {
    let (m, v) = moments(n)?;
    Ok(norm_cdf((x - m) / v.sqrt()))
}

/// Volume of the unit ball in `n` dimensions.
pub(crate) fn ball_volume(n: usize) -> f64 {
    let h = 0.5 * n as f64;
    (h * PI.ln() - lgamma(h + 1.0)).exp()
}

/// `A(n) = √n π^{(n−1)/2} / Γ((n+1)/2)`, so that `F(r²) ≈ A(n) r^{n−1}`.
pub fn leading_coefficient(n: usize) -> f64 {
    (n as f64).sqrt() * ball_volume(n - 1)
}

/// `b(n)` from the geometry of the cube corner on the diagonal:
/// `2√n V_{n−1} ((n−1)/n) e_n / E[χ_{n−1}]` with `e_n` the expected maximum
/// of `n` standard normal variables.
pub fn b_closed_form(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(domain("b(n) needs n >= 3"));
    }
    let nf = n as f64;
    let m = n as i32 - 1;
    let f = |x: f64| nf * x * norm_pdf(x) * norm_cdf(x).powi(m);
    let pts = [-12.0, -6.0, -3.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.5, 6.0, 9.0, 12.0];
    let e_n = integrate(f, &pts, 1e-16, 1e-15, 500).value;
    let chi = core::f64::consts::SQRT_2 * (lgamma(0.5 * nf) - lgamma(0.5 * (nf - 1.0))).exp();
    Ok(2.0 * nf.sqrt() * ball_volume(n - 1) * ((nf - 1.0) / nf) * e_n / chi)
}

/// `F(r²) = A(n) r^{n−1} − b r^n`, exact for `0 < r ≤ 1/√2`, with the
/// given `b`.
pub fn small_r_cdf_with_b(n: usize, r: f64, b: f64) -> Result<f64> {
    if n < 3 {
        return Err(domain("the small-radius form needs n >= 3"));
    }
    if !(r > 0.0 && r <= core::f64::consts::FRAC_1_SQRT_2 * (1.0 + 1e-15)) {
        return Err(domain("r must lie in (0, 1/sqrt 2]"));
    }
    Ok(leading_coefficient(n) * r.powi(n as i32 - 1) - b * r.powi(n as i32))
}

/// [`small_r_cdf_with_b`] with `b` from [`b_closed_form`].
pub fn small_r_cdf(n: usize, r: f64) -> Result<f64> {
    small_r_cdf_with_b(n, r, b_closed_form(n)?)
}

fn check_x(n: usize, x: f64) -> Result<f64> {
    let q = q_max(n)?;
    if !(x >= 0.0 && x < q) {
        return Err(domain("x must lie in [0, Q_max)"));
    }
    Ok(q)
}

/// Distribution function of `Q`. Builds the cosine series on every call;
/// use [`UniformVariance`] to evaluate many points.
pub fn cdf(parent: &UniformParent, x: f64, plan: &FourierPlan) -> Result<DistributionResult> {
    check_x(parent.n, x)?;
    UniformVariance::new(parent.n, plan)?.cdf(x)
}

/// Density of `Q` for `n ≥ 4`.
pub fn pdf(parent: &UniformParent, x: f64, plan: &FourierPlan) -> Result<DistributionResult> {
    check_pdf(parent.n, x)?;
    UniformVariance::new(parent.n, plan)?.pdf(x)
}

fn check_pdf(n: usize, x: f64) -> Result<()> {
    if n < 4 {
        return Err(Error::Unsupported(format!(
            "termwise differentiation is only established for n >= 4 (got n = {n})"
        )));
    }
    let q = q_max(n)?;
    if !(x > 0.0 && x < q) {
        return Err(domain("x must lie in (0, Q_max)"));
    }
    Ok(())
}

/// Radii used by [`estimate_b`]; all are inside the exact region.
const B_RADII: [f64; 4] = [0.6, 0.65, 0.7, core::f64::consts::FRAC_1_SQRT_2];

/// `b(n)` read off the series distribution function through
/// `b = (A(n) r^{n−1} − F(r²)) / r^n` at several radii. The values must
/// agree; their spread is the error estimate.
pub fn estimate_b(n: usize, plan: &FourierPlan) -> Result<DistributionResult> {
    if n < 3 {
        return Err(domain("b(n) needs n >= 3"));
    }
    UniformVariance::new(n, plan)?.estimate_b()
}

/// Uniform-parent distribution with its cosine series computed once.
#[derive(Debug, Clone)]
pub struct UniformVariance {
    pub n: usize,
    /// `None` for `n = 2`, which has a closed form.
    pub series: Option<CosineSeries>,
}

impl UniformVariance {
    pub fn new(n: usize, plan: &FourierPlan) -> Result<Self> {
        if n < 2 {
            return Err(domain("sample size must be at least 2"));
        }
        let series = if n == 2 {
            None
        } else {
            Some(CosineSeries::new(n, plan)?)
        };
        Ok(UniformVariance { n, series })
    }

    /// As [`UniformVariance::new`] but keeps a series whose truncation
    /// error exceeds `plan.tol`; the excess shows in `est_error`.
    pub fn best_effort(n: usize, plan: &FourierPlan) -> Result<Self> {
        if n < 2 {
            return Err(domain("sample size must be at least 2"));
        }
        let series = if n == 2 {
            None
        } else {
            Some(CosineSeries::best_effort(n, plan)?)
        };
        Ok(UniformVariance { n, series })
    }

    pub fn q_max(&self) -> f64 {
        q_max(self.n).unwrap_or(f64::NAN)
    }

    fn cdf_raw(&self, x: f64) -> Result<(f64, f64)> {
        check_x(self.n, x)?;
        match &self.series {
            None => Ok((2.0 * (2.0 * x).sqrt() - 2.0 * x, 1e-15)),
            Some(s) => Ok(s.cdf(x)),
        }
    }

    /// `P(Q ≤ x)` for `x ∈ [0, Q_max)`.
    pub fn cdf(&self, x: f64) -> Result<DistributionResult> {
        if x == 0.0 && self.n >= 2 {
            return Ok(DistributionResult::new(0.0, 0.0, Method::Boundary));
        }
        let (v, e) = self.cdf_raw(x)?;
        let method = if self.series.is_none() {
            Method::UniformClosedForm
        } else {
            Method::UniformFourier
        };
        Ok(DistributionResult::new(v.clamp(0.0, 1.0), e, method))
    }

    /// [`estimate_b`] on this series.
    pub fn estimate_b(&self) -> Result<DistributionResult> {
        let n = self.n;
        if n < 3 {
            return Err(domain("b(n) needs n >= 3"));
        }
    let a = leading_coefficient(n);
        let ni = n as i32;
        let (mut num, mut den) = (0.0, 0.0);
        let mut vals = [0.0; 4];
        let mut err: f64 = 0.0;
        for (i, &r) in B_RADII.iter().enumerate() {
            let f = self.cdf_raw(r * r)?;
            let rn = r.powi(ni);
            vals[i] = (a * r.powi(ni - 1) - f.0) / rn;
            // F errors are magnified by r^{-n}
            let w = rn * rn;
            num += w * vals[i];
            den += w;
            err = err.max(f.1 / rn);
        }
        let b = num / den;
        let spread = vals.iter().fold(0.0f64, |m, v| m.max((v - b).abs()));
        let est = spread.max(err);
        if spread > 1e-4 * b.abs().max(1.0) {
            return Err(Error::Numerical {
                what: "b(n) estimates disagree across radii",
                best: b,
                est_error: est,
            });
        }
        Ok(DistributionResult::new(b, est, Method::UniformFourier))
    }

    /// Density for `n ≥ 4` and `x ∈ (0, Q_max)`.
    pub fn pdf(&self, x: f64) -> Result<DistributionResult> {
        check_pdf(self.n, x)?;
        let s = self.series.as_ref().ok_or_else(|| domain("no series for n = 2"))?;
        let (v, e) = s.pdf(x);
        Ok(DistributionResult::new(v.max(0.0), e, Method::UniformFourierDensity))
    }
}
