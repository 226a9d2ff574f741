//! Seeded Monte-Carlo sampling of `Q` and Kolmogorov–Smirnov comparison
//! with the exact distribution functions.
//!
//! Samples are drawn in fixed-size chunks; chunk `j` uses ChaCha20 seeded
//! from `seed` on stream `j`, so the sorted sample depends only on
//! `(seed, parent, n_samples)` and not on the number of worker threads.

use exact_svar_core::{DistributionResult, ParentSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;

const CHUNK: usize = 1 << 16;

/// Sorted Monte-Carlo sample of the statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    pub sorted_samples: Vec<f64>,
    pub n_samples: usize,
    pub seed: u64,
    pub parent: ParentSpec,
}

/// Random generator for chunk `stream` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

enum Sampler {
    Gamma(Vec<Gamma<f64>>),
    Uniform { n: usize, centered: bool },
}

impl Sampler {
    fn new(parent: &ParentSpec) -> Self {
        let gamma = |alphas: &[f64]| {
            Sampler::Gamma(
                alphas
                    .iter()
                    .map(|&a| Gamma::new(a, 1.0).expect("validated shape"))
                    .collect(),
            )
        };
        match parent {
            ParentSpec::Gamma(p) => gamma(&vec![p.alpha; p.n]),
            ParentSpec::HeteroGamma(p) => gamma(&p.alphas),
            ParentSpec::Uniform(p) => Sampler::Uniform { n: p.n, centered: true },
            ParentSpec::UniformHalf(p) => Sampler::Uniform { n: p.n, centered: false },
        }
    }

    fn draw(&self, rng: &mut ChaCha20Rng, buf: &mut Vec<f64>) -> f64 {
        buf.clear();
        let centered = match self {
            Sampler::Gamma(d) => {
                buf.extend(d.iter().map(|g| g.sample(rng)));
                true
            }
            Sampler::Uniform { n, centered } => {
                buf.extend((0..*n).map(|_| rng.random::<f64>()));
                *centered
            }
        };
        let c = if centered {
            buf.iter().sum::<f64>() / buf.len() as f64
        } else {
            0.5
        };
        buf.iter().map(|x| (x - c) * (x - c)).sum()
    }
}

/// Draws `n_samples` values of the statistic described by `parent`.
pub fn sample_q(parent: &ParentSpec, n_samples: usize, seed: u64) -> EmpiricalDistribution {
    let sampler = Sampler::new(parent);
    let chunks = n_samples.div_ceil(CHUNK);
    let mut samples: Vec<f64> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|j| {
            let mut rng = stream_rng(seed, j as u64);
            let len = CHUNK.min(n_samples - j * CHUNK);
            let mut buf = Vec::with_capacity(parent.n());
            (0..len).map(|_| sampler.draw(&mut rng, &mut buf)).collect::<Vec<_>>()
        })
        .collect();
    samples.par_sort_unstable_by(|a, b| a.total_cmp(b));
    EmpiricalDistribution {
        sorted_samples: samples,
        n_samples,
        seed,
        parent: parent.clone(),
    }
}

impl EmpiricalDistribution {
    /// Fraction of samples `≤ x`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.sorted_samples.partition_point(|&v| v <= x) as f64 / self.n_samples as f64
    }

    /// Sample quantile at probability `p` (lower order statistic).
    pub fn quantile(&self, p: f64) -> f64 {
        let n = self.sorted_samples.len();
        let i = ((p * n as f64).ceil() as usize).clamp(1, n) - 1;
        self.sorted_samples[i]
    }

    pub fn mean(&self) -> f64 {
        self.sorted_samples.iter().sum::<f64>() / self.n_samples as f64
    }

    /// Sample mean and variance with their standard errors
    /// `(mean, se_mean, var, se_var)`.
    pub fn moments(&self) -> (f64, f64, f64, f64) {
        let n = self.n_samples as f64;
        let m = self.mean();
        let (mut m2, mut m4) = (0.0, 0.0);
        for &v in &self.sorted_samples {
            let d = (v - m) * (v - m);
            m2 += d;
            m4 += d * d;
        }
        let var = m2 / (n - 1.0);
        let m4 = m4 / n;
        (m, (var / n).sqrt(), var, ((m4 - var * var).max(0.0) / n).sqrt())
    }

    /// One sample value per line.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["q"])?;
        for v in &self.sorted_samples {
            w.write_record([format!("{v:.17e}")])?;
        }
        w.flush()
    }
}

/// Half-width of the two-sided DKW band at `confidence`.
pub fn dkw_band(n_samples: usize, confidence: f64) -> f64 {
    ((2.0 / (1.0 - confidence)).ln() / (2.0 * n_samples as f64)).sqrt()
}

/// Outcome of a Kolmogorov–Smirnov comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsComparison {
    pub ks_distance: f64,
    pub dkw_band: f64,
    pub confidence: f64,
    /// Allowance for the error of the exact side.
    pub numerical_slack: f64,
    pub pass: bool,
}

impl KsComparison {
    fn new(ks_distance: f64, n: usize, confidence: f64, numerical_slack: f64) -> Self {
        let band = dkw_band(n, confidence);
        KsComparison {
            ks_distance,
            dkw_band: band,
            confidence,
            numerical_slack,
            pass: ks_distance <= band + numerical_slack,
        }
    }
}

/// `sup |F_emp − F|` over the sample points (both one-sided envelopes),
/// calling `exact_cdf` at every distinct sample value. The slack is ten
/// times the largest reported `est_error`.
pub fn ks_compare<F>(
    emp: &EmpiricalDistribution,
    exact_cdf: F,
    confidence: f64,
) -> exact_svar_core::Result<KsComparison>
where
    F: Fn(f64) -> exact_svar_core::Result<DistributionResult> + Sync,
{
    let s = &emp.sorted_samples;
    let n = s.len() as f64;
    let parts: Vec<(f64, f64)> = s
        .par_chunks(4096)
        .enumerate()
        .map(|(c, chunk)| -> exact_svar_core::Result<(f64, f64)> {
            let mut d: f64 = 0.0;
            let mut e: f64 = 0.0;
            for (k, &x) in chunk.iter().enumerate() {
                let i = c * 4096 + k;
                let f = exact_cdf(x)?;
                e = e.max(f.est_error);
                d = d.max((f.value - i as f64 / n).abs()).max(((i + 1) as f64 / n - f.value).abs());
            }
            Ok((d, e))
        })
        .collect::<exact_svar_core::Result<_>>()?;
    let d = parts.iter().fold(0.0f64, |m, p| m.max(p.0));
    let e = parts.iter().fold(0.0f64, |m, p| m.max(p.1));
    Ok(KsComparison::new(d, s.len(), confidence, 10.0 * e))
}

/// Diagnostics of [`ks_compare_grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridDiagnostics {
    pub grid_points: usize,
    /// Largest `est_error` among the accurately evaluated grid points.
    pub max_est_error: f64,
    /// Largest local interpolation error estimate from the half-grid
    /// comparison.
    pub interp_error: f64,
    /// Range of grid points whose `est_error` is within `accurate_below`;
    /// outside it the comparison uses monotonicity only.
    pub accurate_range: (f64, f64),
    /// Upper bound on the distance contributed outside `accurate_range`.
    pub outside_bound: f64,
}

/// Kolmogorov–Smirnov comparison for exact distribution functions too
/// costly to evaluate at every sample point.
///
/// `F` is evaluated at `grid` sample quantiles (in parallel) and
/// interpolated by monotone cubic Hermite splines in `s = √x`. The
/// interpolation error is estimated per interval by rebuilding the spline
/// from every other node and comparing at the dropped nodes. The slack is
/// ten times the worst `est_error` plus the growth of the distance when
/// each sample's local interpolation bound is added.
///
/// Grid values with `est_error > accurate_below` at either end are not
/// interpolated. Below the first accurate node `x_l` both distribution
/// functions lie in `[0, max(F(x_l), F_emp(x_l))]`, above the last one
/// `x_u` in `[min(F(x_u), F_emp(x_u)), 1]`, which bounds the distance there.
pub fn ks_compare_grid<F>(
    emp: &EmpiricalDistribution,
    exact_cdf: F,
    confidence: f64,
    grid: usize,
    accurate_below: f64,
) -> exact_svar_core::Result<(KsComparison, GridDiagnostics)>
where
    F: Fn(f64) -> exact_svar_core::Result<DistributionResult> + Sync,
{
    let s = &emp.sorted_samples;
    let n = s.len();
    // nodes at sample quantiles plus a denser sprinkle in both tails
    let mut probs: Vec<f64> = (0..=grid).map(|i| i as f64 / grid as f64).collect();
    for k in 1..6 {
        let p = 10f64.powi(-k) / 2.0;
        probs.push(p);
        probs.push(1.0 - p);
    }
    let mut xs: Vec<f64> = probs.iter().map(|&p| emp.quantile(p)).collect();
    xs.push(s[0] * 0.5);
    xs.retain(|x| *x > 0.0);
    xs.sort_by(|a, b| a.total_cmp(b));
    xs.dedup();
    let vals: Vec<DistributionResult> = xs
        .par_iter()
        .map(|&x| exact_cdf(x))
        .collect::<exact_svar_core::Result<_>>()?;
    let ok = |v: &DistributionResult| v.est_error <= accurate_below;
    // interior nodes that miss the threshold are dropped; the spline then
    // spans a wider interval there
    let lo = vals.iter().position(ok).unwrap_or(vals.len());
    let hi = vals.iter().rposition(ok).map_or(lo, |i| i + 1);
    if vals.iter().filter(|v| ok(v)).count() < 8 {
        return Err(exact_svar_core::Error::Numerical {
            what: "too few accurate grid points for the KS comparison",
            best: f64::NAN,
            est_error: vals.iter().map(|v| v.est_error).fold(f64::INFINITY, f64::min),
        });
    }
    let (x_l, x_u) = (xs[lo], xs[hi - 1]);
    let (f_l, f_u) = (vals[lo].value, vals[hi - 1].value);
    // below the smallest sample F is pinned by F(0) = 0
    let mut knots_s = if lo == 0 { vec![0.0] } else { Vec::new() };
    let mut knots_f = if lo == 0 { vec![0.0] } else { Vec::new() };
    let mut max_err: f64 = 0.0;
    for (x, v) in xs[lo..hi].iter().zip(&vals[lo..hi]).filter(|(_, v)| ok(v)) {
        knots_s.push(x.sqrt());
        knots_f.push(v.value);
        max_err = max_err.max(v.est_error);
    }
    let spline = MonotoneSpline::new(&knots_s, &knots_f);
    // half-grid rebuild: keep even nodes and compare at the odd ones. Halving
    // the node spacing cuts a cubic's error sixteenfold, so half the coarse
    // discrepancy is a generous bound for the fine spline on the two
    // intervals next to each odd node.
    let even_s: Vec<f64> = knots_s.iter().step_by(2).copied().collect();
    let even_f: Vec<f64> = knots_f.iter().step_by(2).copied().collect();
    let coarse = MonotoneSpline::new(&even_s, &even_f);
    let mut local = vec![f64::NAN; knots_s.len() - 1];
    for i in (1..knots_s.len()).step_by(2) {
        if knots_s[i] < *even_s.last().unwrap() {
            let e = 0.5 * (coarse.eval(knots_s[i]) - knots_f[i]).abs();
            local[i - 1] = e;
            local[i] = e;
        }
    }
    // a trailing interval without an odd node borrows its neighbor's bound
    for j in (0..local.len()).rev() {
        if local[j].is_nan() {
            local[j] = if j > 0 && !local[j - 1].is_nan() { local[j - 1] } else { 0.0 };
        }
    }
    let interp = local.iter().fold(0.0f64, |m, &e| m.max(e));
    let nf = n as f64;
    let mut d: f64 = 0.0;
    let mut d_up: f64 = 0.0;
    let first = if lo == 0 { 0 } else { s.partition_point(|&v| v < x_l) };
    for (i, &x) in s.iter().enumerate().skip(first) {
        if x > x_u {
            break;
        }
        let t = x.sqrt();
        let f = spline.eval(t);
        let gap = (f - i as f64 / nf).abs().max(((i + 1) as f64 / nf - f).abs());
        let j = knots_s.partition_point(|&v| v <= t).clamp(1, local.len()) - 1;
        d = d.max(gap);
        d_up = d_up.max(gap + local[j]);
    }
    let mut outside: f64 = 0.0;
    if lo > 0 {
        outside = outside.max(f_l.max(emp.cdf(x_l)));
    }
    if hi < xs.len() || x_u < s[n - 1] {
        outside = outside.max(1.0 - f_u.min(emp.cdf(x_u)));
    }
    let d = d.max(outside);
    // the local interpolation bounds enter as slack on top of the plain distance
    let slack = 10.0 * max_err + (d_up.max(outside) - d).max(0.0);
    Ok((
        KsComparison::new(d, n, confidence, slack),
        GridDiagnostics {
            grid_points: xs.len(),
            max_est_error: max_err,
            interp_error: interp,
            accurate_range: (x_l, x_u),
            outside_bound: outside,
        },
    ))
}

/// Three-point end slope, clamped to keep the end interval monotone.
fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 <= 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

/// Fritsch–Carlson monotone cubic Hermite interpolant.
struct MonotoneSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl MonotoneSpline {
    fn new(x: &[f64], y: &[f64]) -> Self {
        let n = x.len();
        let delta: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / (x[i + 1] - x[i])).collect();
        let mut m = vec![0.0; n];
        if n == 2 {
            m = vec![delta[0]; 2];
        } else {
            m[0] = end_slope(x[1] - x[0], x[2] - x[1], delta[0], delta[1]);
            m[n - 1] = end_slope(x[n - 1] - x[n - 2], x[n - 2] - x[n - 3], delta[n - 2], delta[n - 3]);
        }
        for i in 1..n - 1 {
            m[i] = if delta[i - 1] * delta[i] <= 0.0 {
                0.0
            } else {
                // weighted harmonic mean (Fritsch–Butland)
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                let w1 = 2.0 * h1 + h0;
                let w2 = h1 + 2.0 * h0;
                (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i])
            };
        }
        MonotoneSpline {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
        }
    }

    fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        let i = self.x.partition_point(|&v| v <= t).clamp(1, n - 1) - 1;
        let h = self.x[i + 1] - self.x[i];
        let u = (t - self.x[i]) / h;
        let (u2, u3) = (u * u, u * u * u);
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h10 = u3 - 2.0 * u2 + u;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h11 = u3 - u2;
        h00 * self.y[i] + h10 * h * self.m[i] + h01 * self.y[i + 1] + h11 * h * self.m[i + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spline_reproduces_smooth_function() {
        let x: Vec<f64> = (0..=40).map(|i| i as f64 / 10.0).collect();
        let y: Vec<f64> = x.iter().map(|v| 1.0 - (-v).exp()).collect();
        let s = MonotoneSpline::new(&x, &y);
        for i in 0..400 {
            let t = i as f64 / 100.0;
            let e = (s.eval(t) - (1.0 - (-t).exp())).abs();
            assert!(e < 2e-4, "t={t}: {e}");
        }
    }

    #[test]
    fn quantiles_and_ecdf() {
        let emp = EmpiricalDistribution {
            sorted_samples: vec![1.0, 2.0, 3.0, 4.0],
            n_samples: 4,
            seed: 0,
            parent: ParentSpec::Uniform(exact_svar_core::UniformParent::new(2).unwrap()),
        };
        assert_eq!(emp.cdf(2.5), 0.5);
        assert_eq!(emp.cdf(4.0), 1.0);
        assert_eq!(emp.quantile(0.5), 2.0);
        assert_eq!(emp.quantile(1.0), 4.0);
        assert_eq!(emp.quantile(0.0), 1.0);
    }
}
