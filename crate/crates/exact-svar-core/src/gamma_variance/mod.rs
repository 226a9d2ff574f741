//! Exact distribution of `Q = Σ(Xᵢ − X̄)²` for independent gamma parents.
//!
//! `F(x) = x^{β−1} ∫ K_β(√(nx/2), z) Π_j M_{α_j}(√(2/n) z) φ(z) dz` with
//! `β = Σα_j/2 + 1`. The density replaces `β` by `β − 1`.

mod integrand;

use crate::config::EvalConfig;
use crate::error::domain;
use crate::parent::{GammaParent, HeteroGammaParent};
use crate::prelude::*;
use crate::quad::integrate;
use crate::result::{DistributionResult, Method};
use crate::specfun::ln_norm_pdf;
use crate::kernels::ln_m;
use crate::{Error, Result};

use integrand::{Integrand, Kind};

fn check_x(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(domain("x must be finite and non-negative"));
    }
    Ok(())
}

/// `Pr{Q ≤ x}` for `n` i.i.d. `Γ(α)` variables (unit scale).
pub fn cdf(parent: &GammaParent, x: f64, cfg: &EvalConfig) -> Result<DistributionResult> {
    cfg.validate()?;
    check_x(x)?;
    if x == 0.0 {
        return Ok(DistributionResult::new(0.0, 0.0, Method::Boundary));
    }
    let groups = [(parent.alpha, parent.n)];
    let mut r = Integrand::new(&groups, parent.n, x, Kind::Cdf).integrate(cfg, true)?;
    r.method = Method::GammaIntegral;
    Ok(r)
}

/// Like [`cdf`] but returns the estimate even when `est_error` exceeds
/// `quad_abs_tol`. For large `x·n` the `z` integrand cancels heavily
/// (`∫|f| ≫ F`), which limits the attainable accuracy.
pub fn cdf_best_effort(parent: &GammaParent, x: f64, cfg: &EvalConfig) -> Result<DistributionResult> {
    cfg.validate()?;
    check_x(x)?;
    if x == 0.0 {
        return Ok(DistributionResult::new(0.0, 0.0, Method::Boundary));
    }
    let groups = [(parent.alpha, parent.n)];
    let mut r = Integrand::new(&groups, parent.n, x, Kind::Cdf).integrate(cfg, false)?;
    r.method = Method::GammaIntegral;
    Ok(r)
}

/// [`cdf_best_effort`] for independent `Γ(α_j)` variables.
pub fn cdf_hetero_best_effort(parent: &HeteroGammaParent, x: f64, cfg: &EvalConfig) -> Result<DistributionResult> {
    cfg.validate()?;
    check_x(x)?;
    if x == 0.0 {
        return Ok(DistributionResult::new(0.0, 0.0, Method::Boundary));
    }
    let groups = group_shapes(&parent.alphas);
    let mut r = Integrand::new(&groups, parent.n(), x, Kind::Cdf).integrate(cfg, false)?;
    r.method = Method::GammaHeteroIntegral;
    Ok(r)
}

/// `Pr{Q ≤ x}` for independent `Γ(α_j)` variables.
pub fn cdf_hetero(parent: &HeteroGammaParent, x: f64, cfg: &EvalConfig) -> Result<DistributionResult> {
    cfg.validate()?;
    check_x(x)?;
    if x == 0.0 {
        return Ok(DistributionResult::new(0.0, 0.0, Method::Boundary));
    }
    let groups = group_shapes(&parent.alphas);
    let mut r = Integrand::new(&groups, parent.n(), x, Kind::Cdf).integrate(cfg, true)?;
    r.method = Method::GammaHeteroIntegral;
    Ok(r)
}

/// Density of `Q`; flagged as derived.
pub fn pdf(parent: &GammaParent, x: f64, cfg: &EvalConfig) -> Result<DistributionResult> {
    cfg.validate()?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain("the density is evaluated at x > 0"));
    }
    let groups = [(parent.alpha, parent.n)];
    let mut r = Integrand::new(&groups, parent.n, x, Kind::Pdf).integrate(cfg, true)?;
    r.method = Method::GammaDensityIntegral;
    r.derived = true;
    Ok(r)
}

/// Density for independent `Γ(α_j)` variables; flagged as derived.
pub fn pdf_hetero(parent: &HeteroGammaParent, x: f64, cfg: &EvalConfig) -> Result<DistributionResult> {
    cfg.validate()?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain("the density is evaluated at x > 0"));
    }
    let groups = group_shapes(&parent.alphas);
    let mut r = Integrand::new(&groups, parent.n(), x, Kind::Pdf).integrate(cfg, true)?;
    r.method = Method::GammaDensityIntegral;
    r.derived = true;
    Ok(r)
}

/// `Pr{Q ≤ x}` when the parent has scale `θ`: `Q(θX) = θ²Q(X)`.
pub fn cdf_scaled(parent: &GammaParent, x: f64, scale: f64, cfg: &EvalConfig) -> Result<DistributionResult> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(domain("scale must be positive"));
    }
    cdf(parent, x / (scale * scale), cfg)
}

/// Density at `x` for a parent with scale `θ`.
pub fn pdf_scaled(parent: &GammaParent, x: f64, scale: f64, cfg: &EvalConfig) -> Result<DistributionResult> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(domain("scale must be positive"));
    }
    let s2 = scale * scale;
    let mut r = pdf(parent, x / s2, cfg)?;
    r.value /= s2;
    r.est_error /= s2;
    Ok(r)
}

/// `cdf` at each point, in order.
pub fn cdf_many(parent: &GammaParent, xs: &[f64], cfg: &EvalConfig) -> Vec<Result<DistributionResult>> {
    xs.iter().map(|&x| cdf(parent, x, cfg)).collect()
}

/// `E[Q] = (n−1)α` for unit scale.
pub fn mean(parent: &GammaParent) -> f64 {
    (parent.n as f64 - 1.0) * parent.alpha
}

/// The `x` with `cdf(x) = p`, by bracketing and Newton steps safeguarded by
/// bisection.
pub fn quantile(parent: &GammaParent, p: f64, cfg: &EvalConfig) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain("p must lie in (0, 1)"));
    }
    let target = 10.0 * cfg.quad_abs_tol;
    let f = |x: f64| -> Result<f64> { Ok(cdf(parent, x, cfg)?.value - p) };
    let (mut lo, mut hi) = (0.0, mean(parent).max(1e-3));
    let mut fhi = f(hi)?;
    let mut iter = 0;
    while fhi < 0.0 {
        lo = hi;
        hi *= 2.0;
        fhi = f(hi)?;
        iter += 1;
        if iter > 200 {
            return Err(Error::Numerical {
                what: "quantile bracket",
                best: hi,
                est_error: f64::INFINITY,
            });
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = f(x)?;
        if fx.abs() <= target {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= 1e-15 * hi {
            return Ok(x);
        }
        let d = pdf(parent, x, cfg).map(|r| r.value).unwrap_or(0.0);
        let newton = x - fx / d;
        x = if d > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::Numerical {
        what: "quantile iteration",
        best: x,
        est_error: hi - lo,
    })
}

/// `E e^{−tQ} = t^{−Σα_j/2} ∫ Π_j M_{α_j}(√(2/n) y − t^{−1/2}) φ(y) dy`.
pub fn laplace_direct(parent: &HeteroGammaParent, t: f64, cfg: &EvalConfig) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain("t must be positive"));
    }
    let groups = group_shapes(&parent.alphas);
    let n = parent.n() as f64;
    let c = (2.0 / n).sqrt();
    let s = 1.0 / t.sqrt();
    let lead = -parent.alpha_sum / 2.0 * t.ln();
    let logf = |y: f64| -> f64 {
        let mut l = lead + ln_norm_pdf(y);
        for &(a, k) in groups.iter() {
            l += k as f64 * ln_m(a, c * y - s).value;
        }
        l
    };
    // The integrand is log-concave-ish with a single hump; bracket it by
    // scanning until it has fallen 60 below its largest sampled value.
    let y0 = 0.0f64;
    let mut peak = logf(y0);
    let mut hi = 1.0;
    let mut lo = -1.0;
    for _ in 0..200 {
        let v = logf(hi);
        peak = peak.max(v);
        if v < peak - 60.0 && hi > s / c {
            break;
        }
        hi *= 1.5;
    }
    for _ in 0..200 {
        let v = logf(lo);
        peak = peak.max(v);
        if v < peak - 60.0 {
            break;
        }
        lo *= 1.5;
    }
    let mut pts = vec![lo];
    let mut b = -8.0;
    while b < hi {
        if b > lo {
            pts.push(b);
        }
        b = if b < 8.0 { b + 2.0 } else { b * 1.5 };
    }
    if s / c > lo && s / c < hi {
        pts.push(s / c);
    }
    pts.push(hi);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let q = integrate(|y: f64| logf(y).exp(), &pts, 1e-300, cfg.quad_rel_tol, cfg.max_segments);
    if !q.converged {
        return Err(Error::Numerical {
            what: "Laplace transform quadrature",
            best: q.value,
            est_error: q.abs_error,
        });
    }
    Ok(q.value)
}

/// Collapses equal shapes into `(α, multiplicity)` pairs.
fn group_shapes(alphas: &[f64]) -> Vec<(f64, usize)> {
    let mut g: Vec<(f64, usize)> = Vec::new();
    for &a in alphas {
        match g.iter_mut().find(|(b, _)| *b == a) {
            Some(e) => e.1 += 1,
            None => g.push((a, 1)),
        }
    }
    g
}

#[cfg(test)]
mod tests;
