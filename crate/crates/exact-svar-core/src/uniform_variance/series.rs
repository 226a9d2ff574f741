use super::fhat::fhat;
use super::lerch::tail_sum;
use super::{leading_coefficient, q_max};
use crate::prelude::*;
use crate::specfun::lgamma;
use crate::{Error, FourierPlan, Result, TailPolicy};
use core::f64::consts::PI;

/// Number of coefficients computed before the first tail check.
const K_START: usize = 256;

/// One power-law term `c·k^{−s}` of the coefficient asymptotics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailTerm {
    pub c: f64,
    pub s: f64,
}

/// Cosine series `F(x) = C₀ − Σ A_k cos(kπx/Q_max)` of the distribution
/// function, with the coefficients beyond the last computed one replaced
/// by their endpoint asymptotics.
#[derive(Debug, Clone)]
pub struct CosineSeries {
    pub n: usize,
    pub q_max: f64,
    pub c0: f64,
    /// `A_1, A_2, …`.
    pub coeffs: Vec<f64>,
    /// Exact leading term and fitted second term of `A_k` for large `k`.
    pub tail: Vec<TailTerm>,
    /// Largest deviation of `A_k` from the tail model over `[K/2, K]`.
    pub residual: f64,
    /// Bound on `|F − series|` from the unmodelled part of the tail.
    pub cdf_error: f64,
}

/// Coefficient of `k^{−(p+2)}` produced by a density `d·x^p` at `x = 0`.
fn endpoint_coefficient(d: f64, p: f64, q: f64) -> f64 {
    let sin = libm::sin(0.5 * PI * (p + 1.0));
    if sin.abs() < 1e-12 {
        return 0.0;
    }
    (2.0 / PI) * d * (lgamma(p + 1.0) + (p + 1.0) * (q / PI).ln()).exp() * sin
}

impl CosineSeries {
    /// Builds the series and fails if the truncation error estimate is
    /// above `plan.tol`.
    pub fn new(n: usize, plan: &FourierPlan) -> Result<Self> {
        let series = Self::best_effort(n, plan)?;
        if series.cdf_error > plan.tol {
            return Err(Error::Numerical {
                what: "uniform cosine series truncation",
                best: series.c0,
                est_error: series.cdf_error,
            });
        }
        Ok(series)
    }

    /// Builds the series up to `plan.k_max` terms whatever the resulting
    /// error estimate.
    pub fn best_effort(n: usize, plan: &FourierPlan) -> Result<Self> {
        if n < 3 {
            return Err(crate::error::domain("the cosine series needs n >= 3"));
        }
        plan.validate()?;
        let q = q_max(n)?;
        let nf = n as f64;
        let mut series = CosineSeries {
            n,
            q_max: q,
            c0: 1.0 - (nf - 1.0) / 12.0 / q,
            coeffs: Vec::new(),
            tail: Vec::new(),
            residual: f64::INFINITY,
            cdf_error: f64::INFINITY,
        };
        let mut k = match plan.tail_policy {
            TailPolicy::Fixed => plan.k_max,
            TailPolicy::Adaptive => K_START.min(plan.k_max),
        };
        loop {
            series.extend(k, plan)?;
            series.fit_tail();
            if series.cdf_error <= plan.tol || k >= plan.k_max {
                break;
            }
            k = (2 * k).min(plan.k_max);
        }
        Ok(series)
    }

    fn extend(&mut self, k_to: usize, plan: &FourierPlan) -> Result<()> {
        let w = PI / self.q_max;
        for k in (self.coeffs.len() + 1)..=k_to {
            let kf = k as f64;
            let f = fhat(self.n, kf * w, plan)?;
            self.coeffs.push(2.0 / PI * f.im / kf);
        }
        Ok(())
    }

    fn fit_tail(&mut self) {
        let n = self.n as f64;
        let q = self.q_max;
        let k = self.coeffs.len();
        let p1 = 0.5 * (n - 3.0);
        let d1 = leading_coefficient(self.n) * 0.5 * (n - 1.0);
        let t1 = TailTerm {
            c: endpoint_coefficient(d1, p1, q),
            s: p1 + 2.0,
        };
        let p2 = 0.5 * n - 1.0;
        let s2 = p2 + 2.0;
        let lo = (k / 2).max(1);
        let resid1 = |j: usize| self.coeffs[j - 1] - t1.c * (j as f64).powf(-t1.s);
        // the second term only exists when x^{n/2} is not smooth in the
        // even extension; otherwise it is left out rather than fitted to noise
        let c2 = if endpoint_coefficient(1.0, p2, q) != 0.0 && k >= 16 {
            let (mut num, mut den) = (0.0, 0.0);
            for j in lo..=k {
                let g = (j as f64).powf(-s2);
                num += resid1(j) * g;
                den += g * g;
            }
            num / den
        } else {
            0.0
        };
        let t2 = TailTerm { c: c2, s: s2 };
        let mut res: f64 = 0.0;
        for j in lo..=k {
            res = res.max((resid1(j) - c2 * (j as f64).powf(-s2)).abs());
        }
        self.tail = vec![t1, t2];
        self.residual = res;
        // unmodelled coefficients taken to decay at least like k^{-3}
        self.cdf_error = res * k as f64 / 2.0 + 1e-15 * k as f64;
    }

    /// Number of explicitly computed coefficients.
    pub fn terms(&self) -> usize {
        self.coeffs.len()
    }

    /// The fitted amplitude of the `x^{n/2}` density term implied by the
    /// second tail term, i.e. `b(n)` as seen from large `k`.
    pub fn tail_b(&self) -> Option<f64> {
        let n = self.n as f64;
        let p2 = 0.5 * n - 1.0;
        let unit = endpoint_coefficient(1.0, p2, self.q_max);
        if unit == 0.0 {
            return None;
        }
        Some(-self.tail[1].c / unit / (0.5 * n))
    }

    /// `(F(x), error estimate)`.
    pub fn cdf(&self, x: f64) -> (f64, f64) {
        let theta = PI * x / self.q_max;
        let mut acc = 0.0;
        let mut comp = 0.0;
        // cos(kθ) by the Chebyshev recurrence drifts for large k; use
        // direct evaluation with compensated summation instead
        for (i, a) in self.coeffs.iter().enumerate() {
            let term = a * libm::cos((i + 1) as f64 * theta);
            let y = term - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        let k = self.coeffs.len();
        let mut tail = 0.0;
        for t in &self.tail {
            if t.c != 0.0 {
                tail += t.c * tail_sum(t.s, theta, k).re;
            }
        }
        let value = self.c0 - acc - tail;
        (value, self.cdf_error)
    }

    /// `(f(x), error estimate)` by termwise differentiation.
    pub fn pdf(&self, x: f64) -> (f64, f64) {
        let w = PI / self.q_max;
        let theta = w * x;
        let mut acc = 0.0;
        for (i, a) in self.coeffs.iter().enumerate() {
            let kf = (i + 1) as f64;
            acc += kf * a * libm::sin(kf * theta);
        }
        let k = self.coeffs.len();
        let mut tail = 0.0;
        for t in &self.tail {
            if t.c != 0.0 {
                tail += t.c * tail_sum(t.s - 1.0, theta, k).im;
            }
        }
        let err = w * (self.residual * (k * k) as f64 + 1e-15 * (k * k) as f64);
        (w * (acc + tail), err)
    }
}
