//! Verification suites: property checks of the kernels, closed-form and
//! Monte-Carlo comparisons of the distribution functions, and calibration
//! of the scale test. Each check is numbered by the acceptance criterion
//! it covers.

use crate::config::Settings;
use crate::mc_oracle::{ks_compare_grid, sample_q, stream_rng, KsComparison};
use exact_svar_core::gamma_variance as gv;
use exact_svar_core::kernels::{k_beta, k_beta_majorant, k_beta_tail_bound, log_m_alpha, KernelMethod};
use exact_svar_core::scale_test::{run_test_with, BuiltinCdf, NullCdfSpec, NullDistribution, Variant};
use exact_svar_core::specfun::ln_gamma;
use exact_svar_core::uniform_variance::{
    self as uv, b_closed_form, fhat, normal_approx_cdf, small_r_cdf_with_b, UniformVariance,
};
use exact_svar_core::{EvalConfig, GammaParent, HeteroGammaParent, ParentSpec, UniformParent};
use rand::Rng;
use serde_json::{json, Map, Value};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

/// Confidence of the DKW bands.
pub const KS_CONFIDENCE: f64 = 0.999;
/// Nodes of the interpolation grid for costly exact CDFs.
pub const KS_GRID: usize = 256;
/// Grid values with a larger `est_error` are treated as unreliable tail.
pub const KS_ACCURATE_BELOW: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Kernels,
    Gamma,
    Uniform,
    All,
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub id: &'static str,
    pub criterion: u32,
    pub pass: bool,
    pub elapsed_s: f64,
    /// Wall-time budget; exceeding it fails the check.
    pub budget_s: Option<f64>,
    pub detail: String,
    pub metrics: Map<String, Value>,
}

impl CheckResult {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "criterion": self.criterion,
            "pass": self.pass,
            "elapsed_s": self.elapsed_s,
            "budget_s": self.budget_s,
            "detail": self.detail,
            "metrics": Value::Object(self.metrics.clone()),
        })
    }
}

type Outcome = Result<(bool, String, Map<String, Value>), String>;

/// Runs checks with shared settings and a cache of uniform series, which
/// are the costly part of the uniform checks.
pub struct Verifier {
    pub settings: Settings,
    pub seed: u64,
    pub mc_samples: usize,
    pub scale_replicates: usize,
    uniform: Mutex<HashMap<usize, Arc<UniformVariance>>>,
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

fn err_str<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ks_json(k: &KsComparison) -> Value {
    json!({
        "ks_distance": k.ks_distance,
        "dkw_band": k.dkw_band,
        "slack": k.numerical_slack,
        "pass": k.pass,
    })
}

impl Verifier {
    pub fn new(settings: Settings, seed: u64) -> Self {
        Verifier {
            settings,
            seed,
            mc_samples: 1_000_000,
            scale_replicates: 10_000,
            uniform: Mutex::new(HashMap::new()),
        }
    }

    fn eval(&self) -> &EvalConfig {
        &self.settings.eval
    }

    fn sub_seed(&self, tag: u64) -> u64 {
        self.seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }

    /// Series for sample size `n`, built on first use.
    pub fn uniform(&self, n: usize) -> Result<Arc<UniformVariance>, String> {
        if let Some(u) = self.uniform.lock().unwrap().get(&n) {
            return Ok(u.clone());
        }
        let u = Arc::new(UniformVariance::new(n, &self.settings.plan).map_err(err_str)?);
        self.uniform.lock().unwrap().insert(n, u.clone());
        Ok(u)
    }

    fn run(&self, id: &'static str, criterion: u32, budget_s: Option<f64>, f: impl FnOnce() -> Outcome) -> CheckResult {
        let t = Instant::now();
        let out = f();
        let elapsed_s = t.elapsed().as_secs_f64();
        let (mut pass, mut detail, metrics) = match out {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}"), Map::new()),
        };
        if let Some(b) = budget_s {
            if elapsed_s > b {
                pass = false;
                detail = format!("{detail}; over the {b} s budget");
            }
        }
        CheckResult {
            id,
            criterion,
            pass,
            elapsed_s,
            budget_s,
            detail,
            metrics,
        }
    }

    /// Checks of one suite, in criterion order.
    pub fn run_suite(&self, suite: Suite) -> Vec<CheckResult> {
        let mut out = Vec::new();
        let all = suite == Suite::All;
        if all || suite == Suite::Uniform {
            out.push(self.b_reproduction());
            out.push(self.small_radius());
        }
        if all || suite == Suite::Gamma {
            out.push(self.gamma_closed_form());
            out.push(self.gamma_mc());
        }
        if all || suite == Suite::Uniform {
            out.push(self.uniform_mc());
        }
        if all || suite == Suite::Kernels {
            out.push(self.kernel_cross());
            out.push(self.asymptotics());
        }
        if all || suite == Suite::Gamma {
            out.push(self.laplace());
        }
        if all || suite == Suite::Uniform {
            out.push(self.fhat_bounds());
        }
        if all || suite == Suite::Gamma {
            out.push(self.gamma_density());
        }
        if all || suite == Suite::Uniform {
            out.push(self.uniform_density());
            out.push(self.moments_normal());
            out.push(self.scale_calibration());
            out.push(self.scale_power());
        }
        out
    }

    /// `b(n)` from the series: `b(3) = 2√6` within 1e-6, and the tabulated
    /// `b(8), b(9), b(10)` within 1e-4.
    pub fn b_reproduction(&self) -> CheckResult {
        self.run("b-reproduction", 1, Some(60.0), || {
            let mut m = Map::new();
            let mut pass = true;
            for (n, want, tol) in [
                (3usize, 2.0 * 6f64.sqrt(), 1e-6),
                (8, 13.03951, 1e-4),
                (9, 11.72490, 1e-4),
                (10, 9.90095, 1e-4),
            ] {
                let b = self.uniform(n)?.estimate_b().map_err(err_str)?;
                let ok = (b.value - want).abs() <= tol;
                pass &= ok;
                m.insert(format!("b{n}"), json!({"value": b.value, "est_error": b.est_error, "want": want, "pass": ok}));
            }
            Ok((pass, "b(3), b(8), b(9), b(10) from the series".into(), m))
        })
    }

    /// `|F(r²) − (A r^{n−1} − b r^n)| ≤ 1e-6` for `n = 3..7`, `r = 0.1..0.7`.
    pub fn small_radius(&self) -> CheckResult {
        self.run("small-radius-form", 2, Some(120.0), || {
            let mut m = Map::new();
            let mut worst: f64 = 0.0;
            for n in 3..=7usize {
                let u = self.uniform(n)?;
                let b = if n <= 5 {
                    b_closed_form(n).map_err(err_str)?
                } else {
                    let est = u.estimate_b().map_err(err_str)?.value;
                    m.insert(format!("b{n}_series"), json!(est));
                    m.insert(format!("b{n}_closed_form"), json!(b_closed_form(n).map_err(err_str)?));
                    est
                };
                let mut w: f64 = 0.0;
                for i in 1..=7 {
                    let r = i as f64 / 10.0;
                    let f = u.cdf(r * r).map_err(err_str)?.value;
                    w = w.max((f - small_r_cdf_with_b(n, r, b).map_err(err_str)?).abs());
                }
                m.insert(format!("max_diff_n{n}"), json!(w));
                worst = worst.max(w);
            }
            Ok((worst <= 1e-6, format!("max difference {worst:.3e} (tol 1e-6)"), m))
        })
    }

    /// `α = 1, n = 2`: `F(x) = 1 − e^{−√(2x)}` within 1e-6 on `x = 0.05..3`.
    pub fn gamma_closed_form(&self) -> CheckResult {
        self.run("gamma-closed-form", 3, Some(30.0), || {
            let p = GammaParent::new(1.0, 2).map_err(err_str)?;
            let mut worst: f64 = 0.0;
            for i in 1..=60 {
                let x = 0.05 * i as f64;
                let f = gv::cdf(&p, x, self.eval()).map_err(err_str)?.value;
                worst = worst.max((f - (1.0 - (-(2.0 * x).sqrt()).exp())).abs());
            }
            let mut m = Map::new();
            m.insert("max_diff".into(), json!(worst));
            Ok((worst <= 1e-6, format!("max difference {worst:.3e} (tol 1e-6)"), m))
        })
    }

    /// KS comparison with seeded samples for `α ∈ {0.5, 1, 2, 5}`,
    /// `n ∈ {2, 3, 5, 10}`.
    pub fn gamma_mc(&self) -> CheckResult {
        self.run("gamma-monte-carlo", 4, Some(600.0), || {
            let mut m = Map::new();
            let mut pass = true;
            let mut worst: f64 = 0.0;
            for (i, &alpha) in [0.5, 1.0, 2.0, 5.0].iter().enumerate() {
                for (j, &n) in [2usize, 3, 5, 10].iter().enumerate() {
                    let p = GammaParent::new(alpha, n).map_err(err_str)?;
                    let emp = sample_q(&ParentSpec::Gamma(p), self.mc_samples, self.sub_seed((4 * i + j) as u64 + 1));
                    let (k, d) = ks_compare_grid(
                        &emp,
                        |x| gv::cdf_best_effort(&p, x, self.eval()),
                        KS_CONFIDENCE,
                        KS_GRID,
                        KS_ACCURATE_BELOW,
                    )
                    .map_err(err_str)?;
                    pass &= k.pass;
                    worst = worst.max(k.ks_distance / (k.dkw_band + k.numerical_slack));
                    let mut v = ks_json(&k);
                    v["interp_error"] = json!(d.interp_error);
                    m.insert(format!("alpha{alpha}_n{n}"), v);
                }
            }
            Ok((pass, format!("16 parents, worst distance/band {worst:.3}"), m))
        })
    }

    /// KS comparison with seeded samples for uniform parents, `n ∈ {3, 4, 5, 8}`.
    pub fn uniform_mc(&self) -> CheckResult {
        self.run("uniform-monte-carlo", 5, Some(300.0), || {
            let mut m = Map::new();
            let mut pass = true;
            let mut worst: f64 = 0.0;
            for &n in &[3usize, 4, 5, 8] {
                let u = self.uniform(n)?;
                let parent = ParentSpec::Uniform(UniformParent::new(n).map_err(err_str)?);
                let emp = sample_q(&parent, self.mc_samples, self.sub_seed(100 + n as u64));
                let (k, d) = ks_compare_grid(&emp, |x| u.cdf(x), KS_CONFIDENCE, KS_GRID, KS_ACCURATE_BELOW)
                    .map_err(err_str)?;
                pass &= k.pass;
                worst = worst.max(k.ks_distance / (k.dkw_band + k.numerical_slack));
                let mut v = ks_json(&k);
                v["interp_error"] = json!(d.interp_error);
                m.insert(format!("n{n}"), v);
            }
            Ok((pass, format!("n = 3, 4, 5, 8, worst distance/band {worst:.3}"), m))
        })
    }

    /// Hermite, `₀F₁` and contour evaluations of `K_β` agree to rel. 1e-8,
    /// and the contour value does not depend on `ρ`.
    pub fn kernel_cross(&self) -> CheckResult {
        self.run("kernel-cross-validation", 6, None, || {
            let mut worst_m: f64 = 0.0;
            let mut worst_rho: f64 = 0.0;
            for &beta in &[1.5, 2.0, 3.5, 6.0] {
                for &r in &[0.1, 1.0, 3.0] {
                    for &z in &[-3.0, 0.0, 3.0] {
                        let k = |m: KernelMethod, cfg: &EvalConfig| k_beta(beta, r, z, m, cfg).map(|v| v.value);
                        let base = k(KernelMethod::Contour, self.eval()).map_err(err_str)?;
                        for m in [KernelMethod::HermiteSeries, KernelMethod::ZeroFOneSeries] {
                            worst_m = worst_m.max(rel(k(m, self.eval()).map_err(err_str)?, base));
                        }
                        for rho in [0.5, 1.0, 2.0] {
                            let cfg = EvalConfig {
                                contour_rho: Some(rho),
                                ..*self.eval()
                            };
                            worst_rho = worst_rho.max(rel(k(KernelMethod::Contour, &cfg).map_err(err_str)?, base));
                        }
                    }
                }
            }
            let mut m = Map::new();
            m.insert("max_rel_methods".into(), json!(worst_m));
            m.insert("max_rel_rho".into(), json!(worst_rho));
            Ok((
                worst_m <= 1e-8 && worst_rho <= 1e-8,
                format!("methods {worst_m:.2e}, rho {worst_rho:.2e} (tol 1e-8)"),
                m,
            ))
        })
    }

    /// Limits of `M_α` at `z = −10³` and `z = 40`, the `K_β` majorant on a
    /// random grid and the large-`z` bound on a fixed grid.
    pub fn asymptotics(&self) -> CheckResult {
        self.run("asymptotic-bounds", 7, None, || {
            let cfg = self.eval();
            let mut neg: f64 = 0.0;
            for &a in &[0.5, 1.0, 2.0, 3.5, 7.0] {
                let l = log_m_alpha(a, -1000.0, cfg).map_err(err_str)? + a * 1000f64.ln();
                neg = neg.max(l.exp_m1().abs());
            }
            let mut pos: f64 = 0.0;
            let z = 40.0f64;
            for &a in &[0.5, 1.0, 2.5, 4.0] {
                let lead = 0.5 * std::f64::consts::PI.ln() - ln_gamma(a).map_err(err_str)?
                    + z * z / 4.0
                    + (a - 1.0) * (z / 2.0).ln();
                pos = pos.max((log_m_alpha(a, z, cfg).map_err(err_str)? - lead).exp_m1().abs());
            }
            let mut rng = stream_rng(self.sub_seed(7), 0);
            let mut majorant_ok = true;
            for _ in 0..300 {
                let beta = rng.random_range(0.5..8.0);
                let r = rng.random_range(0.0..6.0);
                let z = rng.random_range(-6.0..6.0);
                let k = k_beta(beta, r, z, KernelMethod::Auto, cfg).map_err(err_str)?.value;
                majorant_ok &= k.abs() < k_beta_majorant(beta, r, z).map_err(err_str)?;
            }
            let mut tail_ok = true;
            for &beta in &[1.5, 2.0, 3.5, 6.0] {
                for &x in &[0.5f64, 2.0, 8.0] {
                    for i in 1..=50 {
                        let z = i as f64;
                        let k = k_beta(beta, x.sqrt(), z, KernelMethod::Auto, cfg).map_err(err_str)?.value;
                        tail_ok &= k.abs() <= k_beta_tail_bound(beta, x, z).map_err(err_str)?;
                    }
                }
            }
            let mut m = Map::new();
            m.insert("neg_limit_dev".into(), json!(neg));
            m.insert("pos_limit_dev".into(), json!(pos));
            m.insert("majorant".into(), json!(majorant_ok));
            m.insert("tail_bound".into(), json!(tail_ok));
            Ok((
                neg < 0.01 && pos < 0.01 && majorant_ok && tail_ok,
                format!("z=-1e3 dev {neg:.2e}, z=40 dev {pos:.2e}, majorant {majorant_ok}, tail bound {tail_ok}"),
                m,
            ))
        })
    }

    /// `t ∫ e^{−tx} F(x) dx` by quadrature against the direct Laplace
    /// transform, rel. 1e-4.
    pub fn laplace(&self) -> CheckResult {
        self.run("laplace-consistency", 8, None, || {
            let cfg = self.eval();
            let mut worst: f64 = 0.0;
            let mut m = Map::new();
            for &(a, n) in &[(1.0, 3usize), (2.0, 5)] {
                let p = GammaParent::new(a, n).map_err(err_str)?;
                let h = HeteroGammaParent::from(p);
                let mean = gv::mean(&p);
                for &t in &[0.5, 1.0, 2.0] {
                    let top = (16.0 * mean).max(40.0 / t);
                    let pts: Vec<f64> = [0.0, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0]
                        .iter()
                        .map(|f| f * mean)
                        .chain([top])
                        .collect();
                    let mut failure = None;
                    let q = exact_svar_core::quad::integrate(
                        |x: f64| {
                            if x <= 0.0 {
                                return 0.0;
                            }
                            match gv::cdf_best_effort(&p, x, cfg) {
                                Ok(f) => t * (-t * x).exp() * f.value,
                                Err(e) => {
                                    failure = Some(e);
                                    f64::NAN
                                }
                            }
                        },
                        &pts,
                        1e-10,
                        1e-8,
                        400,
                    );
                    if let Some(e) = failure {
                        return Err(e.to_string());
                    }
                    // F ≈ 1 beyond the last point
                    let lhs = q.value + (-t * top).exp();
                    let rhs = gv::laplace_direct(&h, t, cfg).map_err(err_str)?;
                    let r = rel(lhs, rhs);
                    worst = worst.max(r);
                    m.insert(format!("alpha{a}_n{n}_t{t}"), json!({"quadrature": lhs, "direct": rhs, "rel": r}));
                }
            }
            Ok((worst <= 1e-4, format!("max rel {worst:.2e} (tol 1e-4)"), m))
        })
    }

    /// `|f̂(t)| ≤ 1` for the uniform characteristic function and
    /// `|f̂(t)| → 1` as `t → 0⁺`.
    pub fn fhat_bounds(&self) -> CheckResult {
        self.run("fhat-bounds", 8, None, || {
            let plan = &self.settings.plan;
            let mut sup: f64 = 0.0;
            let mut small: f64 = 0.0;
            for &n in &[3usize, 4, 5, 8, 13] {
                let mut t = 0.01;
                while t < 2000.0 {
                    sup = sup.max(fhat(n, t, plan).map_err(err_str)?.norm());
                    t *= 1.6;
                }
                for &t in &[1e-4, 1e-5, 1e-6] {
                    small = small.max((fhat(n, t, plan).map_err(err_str)?.norm() - 1.0).abs());
                }
            }
            let mut m = Map::new();
            m.insert("max_modulus".into(), json!(sup));
            m.insert("small_t_dev".into(), json!(small));
            Ok((
                sup <= 1.0 + 1e-12 && small <= 1e-4,
                format!("max |f| {sup:.15}, small-t deviation {small:.2e}"),
                m,
            ))
        })
    }

    /// Gamma densities against central differences of the CDF, rel. 1e-3.
    pub fn gamma_density(&self) -> CheckResult {
        self.run("gamma-density", 9, None, || {
            let cfg = self.eval();
            let mut worst: f64 = 0.0;
            for &(a, n) in &[(2.0, 4usize), (0.5, 3), (1.0, 2)] {
                let p = GammaParent::new(a, n).map_err(err_str)?;
                for &f in &[0.5, 1.0, 2.0] {
                    let x = f * gv::mean(&p);
                    let h = 1e-3 * x;
                    let d = gv::pdf(&p, x, cfg).map_err(err_str)?.value;
                    let fd = (gv::cdf(&p, x + h, cfg).map_err(err_str)?.value
                        - gv::cdf(&p, x - h, cfg).map_err(err_str)?.value)
                        / (2.0 * h);
                    worst = worst.max(rel(d, fd));
                }
            }
            let mut m = Map::new();
            m.insert("max_rel".into(), json!(worst));
            Ok((worst <= 1e-3, format!("max rel {worst:.2e} (tol 1e-3)"), m))
        })
    }

    /// Uniform densities against central differences of the CDF, rel. 1e-3.
    pub fn uniform_density(&self) -> CheckResult {
        self.run("uniform-density", 9, None, || {
            let mut worst: f64 = 0.0;
            for &n in &[4usize, 5] {
                let u = self.uniform(n)?;
                let q = u.q_max();
                for &f in &[0.3, 0.55, 0.8] {
                    let x = f * q;
                    let h = 1e-4;
                    let d = u.pdf(x).map_err(err_str)?.value;
                    let fd = (u.cdf(x + h).map_err(err_str)?.value - u.cdf(x - h).map_err(err_str)?.value) / (2.0 * h);
                    worst = worst.max(rel(d, fd));
                }
            }
            let mut m = Map::new();
            m.insert("max_rel".into(), json!(worst));
            Ok((worst <= 1e-3, format!("max rel {worst:.2e} (tol 1e-3)"), m))
        })
    }

    /// Seeded sample moments for `n ∈ {3, 6, 13}` within four standard
    /// errors, and the sup distance to the normal approximation falling
    /// over `n ∈ {5, 10, 20, 40}`.
    pub fn moments_normal(&self) -> CheckResult {
        self.run("moments-normal-limit", 10, None, || {
            let mut m = Map::new();
            let mut pass = true;
            for &n in &[3usize, 6, 13] {
                let parent = ParentSpec::Uniform(UniformParent::new(n).map_err(err_str)?);
                let emp = sample_q(&parent, self.mc_samples, self.sub_seed(200 + n as u64));
                let (mean, se_m, var, se_v) = emp.moments();
                let (em, ev) = uv::moments(n).map_err(err_str)?;
                let (zm, zv) = ((mean - em) / se_m, (var - ev) / se_v);
                let ok = zm.abs() <= 4.0 && zv.abs() <= 4.0;
                pass &= ok;
                m.insert(format!("moments_n{n}"), json!({"z_mean": zm, "z_var": zv, "pass": ok}));
            }
            let mut dists = Vec::new();
            for &n in &[5usize, 10, 20, 40] {
                let u = self.uniform(n)?;
                let q = u.q_max();
                let mut d: f64 = 0.0;
                for i in 1..800 {
                    let x = q * i as f64 / 800.0;
                    let f = u.cdf(x).map_err(err_str)?.value;
                    d = d.max((f - normal_approx_cdf(n, x).map_err(err_str)?).abs());
                }
                dists.push(d);
            }
            let decreasing = dists.windows(2).all(|w| w[1] < w[0]);
            pass &= decreasing;
            m.insert("normal_sup_distance".into(), json!(dists));
            let shown: Vec<String> = dists.iter().map(|d| format!("{d:.3e}")).collect();
            Ok((pass, format!("normal sup distances [{}] for n = 5, 10, 20, 40", shown.join(", ")), m))
        })
    }

    fn simulate_p(&self, null: &NullDistribution, spec: &NullCdfSpec, draw: impl Fn(&mut rand_chacha::ChaCha20Rng) -> f64 + Sync, reps: usize, tag: u64) -> Result<Vec<f64>, String> {
        use rayon::prelude::*;
        let seed = self.sub_seed(tag);
        (0..reps)
            .into_par_iter()
            .map(|rep| {
                let mut rng = stream_rng(seed, rep as u64);
                let y: Vec<f64> = (0..null.n).map(|_| draw(&mut rng)).collect();
                run_test_with(&y, spec, null, None).map(|r| r.p_value).map_err(err_str)
            })
            .collect()
    }

    /// Size at level 0.05 within `[0.04, 0.06]` and uniformity of the
    /// p-values (Kolmogorov distance ≤ 0.02) under a simulated null.
    pub fn scale_calibration(&self) -> CheckResult {
        self.run("scale-test-calibration", 11, None, || {
            let null = NullDistribution::new(Variant::Centered, 6, &self.settings.plan).map_err(err_str)?;
            let spec = NullCdfSpec::Builtin(BuiltinCdf::Uniform { lo: 0.0, hi: 1.0 });
            let mut p = self.simulate_p(&null, &spec, |r| r.random::<f64>(), self.scale_replicates, 11)?;
            let reps = p.len() as f64;
            let size = p.iter().filter(|&&v| v < 0.05).count() as f64 / reps;
            p.sort_by(|a, b| a.total_cmp(b));
            let ks = p
                .iter()
                .enumerate()
                .map(|(i, &v)| (v - i as f64 / reps).abs().max(((i + 1) as f64 / reps - v).abs()))
                .fold(0.0f64, f64::max);
            let mut m = Map::new();
            m.insert("size".into(), json!(size));
            m.insert("ks_distance".into(), json!(ks));
            Ok((
                (0.04..=0.06).contains(&size) && ks <= 0.02,
                format!("size {size:.4} (in [0.04, 0.06]), KS {ks:.4} (tol 0.02)"),
                m,
            ))
        })
    }

    /// Rejection rate against logistic scale alternatives is
    /// nondecreasing in the scale ratio.
    pub fn scale_power(&self) -> CheckResult {
        self.run("scale-test-power", 11, None, || {
            let null = NullDistribution::new(Variant::Centered, 6, &self.settings.plan).map_err(err_str)?;
            let spec = NullCdfSpec::Builtin(BuiltinCdf::Logistic { location: 0.0, scale: 1.0 });
            let reps = (self.scale_replicates / 2).max(100);
            let mut rates = Vec::new();
            for (i, &beta) in [1.0f64, 1.5, 2.0].iter().enumerate() {
                let p = self.simulate_p(
                    &null,
                    &spec,
                    |r| {
                        let u: f64 = r.random::<f64>().max(f64::MIN_POSITIVE);
                        beta * (u / (1.0 - u)).ln()
                    },
                    reps,
                    20 + i as u64,
                )?;
                rates.push(p.iter().filter(|&&v| v < 0.05).count() as f64 / reps as f64);
            }
            let ok = rates.windows(2).all(|w| w[1] >= w[0]);
            let mut m = Map::new();
            m.insert("rejection_rates".into(), json!(rates));
            Ok((ok, format!("rejection rates {rates:.4?} at scale ratios 1, 1.5, 2"), m))
        })
    }
}

/// JSON summary of a run.
pub fn summary(results: &[CheckResult]) -> Value {
    json!({
        "pass": results.iter().all(|r| r.pass),
        "checks": results.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
    })
}
