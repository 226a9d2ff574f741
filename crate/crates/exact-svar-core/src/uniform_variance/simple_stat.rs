use super::lerch::tail_sum;
use super::ball_volume;
use crate::prelude::*;
use crate::specfun::{erf_complex, lgamma, Complex64};
use crate::{DistributionResult, Error, FourierPlan, Method, Result};
use core::f64::consts::PI;

/// Distribution function of `S = Σ(Uᵢ − ½)²` for `n` uniform variables.
///
/// `n = 2` is the disk-in-square area; larger `n` use the cosine series
/// with closed-form coefficients.
pub fn simple_stat_cdf(n: usize, x: f64, plan: &FourierPlan) -> Result<DistributionResult> {
    if n < 2 {
        return Err(crate::error::domain("sample size must be at least 2"));
    }
    if !(x >= 0.0 && x < 0.25 * n as f64) {
        return Err(crate::error::domain("x must lie in [0, n/4)"));
    }
    SimpleStat::new(n, plan)?.cdf(x)
}

/// Distribution of `Σ(Uᵢ − ½)²` with its series computed once.
#[derive(Debug, Clone)]
pub struct SimpleStat {
    pub n: usize,
    series: Option<SimpleStatSeries>,
}

impl SimpleStat {
    pub fn new(n: usize, plan: &FourierPlan) -> Result<Self> {
        if n < 2 {
            return Err(crate::error::domain("sample size must be at least 2"));
        }
        plan.validate()?;
        let series = if n == 2 {
            None
        } else {
            Some(SimpleStatSeries::new(n, plan)?)
        };
        Ok(SimpleStat { n, series })
    }

    /// Upper end `n/4` of the support.
    pub fn sup(&self) -> f64 {
        0.25 * self.n as f64
    }

    /// `P(S ≤ x)` for `x ∈ [0, n/4)`.
    pub fn cdf(&self, x: f64) -> Result<DistributionResult> {
        if !(x >= 0.0 && x < self.sup()) {
            return Err(crate::error::domain("x must lie in [0, n/4)"));
        }
        if x == 0.0 {
            return Ok(DistributionResult::new(0.0, 0.0, Method::Boundary));
        }
        match &self.series {
            None => Ok(DistributionResult::new(
                disk_in_square(x),
                1e-15,
                Method::SimpleStatClosedForm,
            )),
            Some(s) => {
                let (v, e) = s.cdf(x);
                Ok(DistributionResult::new(v.clamp(0.0, 1.0), e, Method::SimpleStatFourier))
            }
        }
    }
}

fn disk_in_square(x: f64) -> f64 {
    let r2 = x;
    if r2 <= 0.25 {
        return PI * r2;
    }
    if r2 >= 0.5 {
        return 1.0;
    }
    let r = r2.sqrt();
    // four circular segments beyond the edges x = ±½, y = ±½
    let seg = r2 * libm::acos(0.5 / r) - 0.5 * (r2 - 0.25).sqrt();
    PI * r2 - 4.0 * seg
}

#[derive(Debug, Clone)]
struct SimpleStatSeries {
    l: f64,
    coeffs: Vec<f64>,
    tail_c: f64,
    tail_s: f64,
    error: f64,
}

impl SimpleStatSeries {
    fn new(n: usize, plan: &FourierPlan) -> Result<Self> {
        let nf = n as f64;
        let l = 0.25 * nf;
        // F = V_n x^{n/2} below 1/4, so f ≈ V_n (n/2) x^{n/2−1}
        let p = 0.5 * nf - 1.0;
        let d = ball_volume(n) * 0.5 * nf;
        let sin = libm::sin(0.5 * PI * (p + 1.0));
        let tail_c = if sin.abs() < 1e-12 {
            0.0
        } else {
            (2.0 / PI) * d * (lgamma(p + 1.0) + (p + 1.0) * (l / PI).ln()).exp() * sin
        };
        let tail_s = p + 2.0;
        let ln_pre = -(nf - 1.0) * core::f64::consts::LN_2 + (0.5 * nf - 1.0) * PI.ln();
        let pre = ln_pre.exp();
        let cap = plan.k_max.saturating_mul(64).max(1024);
        let mut s = SimpleStatSeries {
            l,
            coeffs: Vec::new(),
            tail_c,
            tail_s,
            error: f64::INFINITY,
        };
        let mut k = 1024.min(cap);
        loop {
            for j in (s.coeffs.len() + 1)..=k {
                let jf = j as f64;
                let h = Complex64::new(0.0, -jf * PI / nf).sqrt();
                let q = (erf_complex(h) / h).powi(n as i32);
                s.coeffs.push(pre * q.im / jf);
            }
            let mut res: f64 = 0.0;
            for j in (k / 2).max(1)..=k {
                res = res.max((s.coeffs[j - 1] - tail_c * (j as f64).powf(-tail_s)).abs());
            }
            s.error = res * k as f64 / 2.0 + 1e-16 * k as f64;
            if s.error <= 0.5 * plan.tol || k >= cap {
                break;
            }
            k = (2 * k).min(cap);
        }
        if s.error > plan.tol {
            return Err(Error::Numerical {
                what: "simple statistic series truncation",
                best: f64::NAN,
                est_error: s.error,
            });
        }
        Ok(s)
    }

    fn cdf(&self, x: f64) -> (f64, f64) {
        let theta = PI * x / self.l;
        let mut acc = 0.0;
        for (i, a) in self.coeffs.iter().enumerate() {
            acc += a * libm::cos((i + 1) as f64 * theta);
        }
        let mut v = 2.0 / 3.0 - acc;
        if self.tail_c != 0.0 {
            v -= self.tail_c * tail_sum(self.tail_s, theta, self.coeffs.len()).re;
        }
        (v, self.error)
    }
}
