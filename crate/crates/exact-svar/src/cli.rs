//! Command-line front end. `run` returns the process exit code.

use crate::batch::{evaluate, parse_points};
use crate::config::{resolve_from_env, Overrides, Settings};
use crate::data::{parse_null_spec, read_values};
use crate::error::CliError;
use crate::output::{write_records, Format, OutputRecord};
use crate::verify::{summary, Suite, Verifier};
use clap::{Args, Parser, Subcommand};
use exact_svar_core::gamma_variance as gv;
use exact_svar_core::scale_test::{run_test, Variant};
use exact_svar_core::uniform_variance::{self as uv, SimpleStat, UniformVariance};
use exact_svar_core::{DistributionResult, GammaParent, HeteroGammaParent};
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Debug, Parser)]
#[command(name = "exact-svar", version, about = "Exact distribution of the sample variance for gamma and uniform samples")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "table", global = true)]
    pub format: Format,
    /// Absolute accuracy target (quadrature and Fourier series).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Largest number of Fourier coefficients.
    #[arg(long, global = true)]
    pub kmax: Option<usize>,
    /// Circle radius of the contour kernel method.
    #[arg(long, global = true)]
    pub rho: Option<f64>,
    /// Truncation of the z integral: Z for [-Z, Z], or LO:HI.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub zcut: Option<String>,
    /// Kernel method: auto, saddle, contour, hermite, 0f1, bessel.
    #[arg(long, global = true)]
    pub kernel: Option<String>,
    /// Report elapsed_ms as 0 so output is byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gamma-parent distribution.
    Gamma {
        #[command(subcommand)]
        op: GammaOp,
    },
    /// Uniform-parent distribution.
    Uniform {
        #[command(subcommand)]
        op: UniformOp,
    },
    /// Scale goodness-of-fit test on a data file.
    Test(TestArgs),
    /// Run verification suites and print a JSON summary.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    /// Shape; a comma list gives one shape per observation.
    #[arg(long)]
    pub alpha: String,
    /// Sample size (implied by a list of shapes).
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum GammaOp {
    Cdf {
        #[command(flatten)]
        parent: GammaArgs,
        /// Point, comma list, or grid start:stop:count.
        #[arg(long)]
        at: String,
    },
    Pdf {
        #[command(flatten)]
        parent: GammaArgs,
        #[arg(long)]
        at: String,
    },
    Quantile {
        #[command(flatten)]
        parent: GammaArgs,
        /// Probability, comma list, or grid start:stop:count.
        #[arg(long)]
        p: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum UniformOp {
    Cdf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        at: String,
    },
    Pdf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        at: String,
    },
    /// Constant b(n) of the small-radius form, read off the series.
    Bn {
        #[arg(long)]
        n: usize,
    },
    /// Mean and variance.
    Moments {
        #[arg(long)]
        n: usize,
    },
    /// Distribution of the sum of squared deviations from 1/2.
    SimpleCdf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        at: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum VariantArg {
    Centered,
    Half,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    /// Data file, one value per line.
    #[arg(long)]
    pub data: PathBuf,
    /// Null distribution: uniform, normal:MEAN,SD, exponential:RATE,
    /// logistic:LOC,SCALE, gamma:SHAPE,SCALE, or table:PATH.
    #[arg(long)]
    pub null: String,
    #[arg(long, value_enum, default_value = "centered")]
    pub variant: VariantArg,
    #[arg(long)]
    pub level: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Monte-Carlo sample size.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    /// Replicates of the simulated scale test.
    #[arg(long, default_value_t = 10_000)]
    pub replicates: usize,
}

fn map(v: Value) -> Map<String, Value> {
    v.as_object().cloned().unwrap_or_default()
}

struct Ctx {
    settings: Settings,
    no_timing: bool,
}

impl Ctx {
    fn fill(&self, mut rec: OutputRecord, r: &exact_svar_core::Result<DistributionResult>, ms: f64) -> (OutputRecord, Option<CliError>) {
        rec.elapsed_ms = if self.no_timing { 0.0 } else { ms };
        match r {
            Ok(d) => {
                rec.value = d.value;
                rec.est_error = d.est_error;
                rec.method = d.method.as_str().to_string();
                (rec, None)
            }
            Err(e) => {
                if let exact_svar_core::Error::Numerical { best, est_error, .. } = e {
                    rec.value = *best;
                    rec.est_error = *est_error;
                }
                rec.method = "error".into();
                rec.extra.insert("error".into(), json!(e.to_string()));
                (rec, Some(CliError::from(e.clone())))
            }
        }
    }

    /// Records for a point list, plus the first failure.
    fn points<F>(&self, command: &str, base: &Value, key: &str, xs: &[f64], f: F) -> (Vec<OutputRecord>, Option<CliError>)
    where
        F: Fn(f64) -> exact_svar_core::Result<DistributionResult> + Sync,
    {
        let results = evaluate(xs, |&x| f(x));
        let mut first = None;
        let mut out = Vec::with_capacity(xs.len());
        for (x, (r, ms)) in xs.iter().zip(results) {
            let mut inputs = map(base.clone());
            inputs.insert(key.into(), json!(x));
            let (mut rec, err) = self.fill(OutputRecord::new(command, inputs), &r, ms);
            rec.extra.entry("error").or_insert(Value::Null);
            if first.is_none() {
                first = err;
            }
            out.push(rec);
        }
        (out, first)
    }
}

enum Parent {
    Equal(GammaParent),
    Hetero(HeteroGammaParent),
}

fn gamma_parent(a: &GammaArgs) -> Result<(Parent, Value), CliError> {
    let alphas = parse_points(&a.alpha)?;
    if alphas.len() == 1 {
        let n = a.n.ok_or_else(|| CliError::Usage("--n is required with a single shape".into()))?;
        let p = GammaParent::new(alphas[0], n)?;
        return Ok((Parent::Equal(p), json!({"alpha": alphas[0], "n": n})));
    }
    if let Some(n) = a.n {
        if n != alphas.len() {
            return Err(CliError::Usage(format!("--n {n} does not match {} shapes", alphas.len())));
        }
    }
    let n = alphas.len();
    let p = HeteroGammaParent::new(alphas.clone())?;
    Ok((Parent::Hetero(p), json!({"alpha": alphas, "n": n})))
}

type Emitted = (Vec<OutputRecord>, Option<CliError>);

fn cmd_gamma(ctx: &Ctx, op: &GammaOp) -> Result<Emitted, CliError> {
    let cfg = &ctx.settings.eval;
    match op {
        GammaOp::Cdf { parent, at } | GammaOp::Pdf { parent, at } => {
            let xs = parse_points(at)?;
            let (p, base) = gamma_parent(parent)?;
            let is_cdf = matches!(op, GammaOp::Cdf { .. });
            let name = if is_cdf { "gamma cdf" } else { "gamma pdf" };
            Ok(ctx.points(name, &base, "x", &xs, |x| match (&p, is_cdf) {
                (Parent::Equal(p), true) => gv::cdf(p, x, cfg),
                (Parent::Equal(p), false) => gv::pdf(p, x, cfg),
                (Parent::Hetero(p), true) => gv::cdf_hetero(p, x, cfg),
                (Parent::Hetero(p), false) => gv::pdf_hetero(p, x, cfg),
            }))
        }
        GammaOp::Quantile { parent, p } => {
            let ps = parse_points(p)?;
            let (par, base) = gamma_parent(parent)?;
            let Parent::Equal(par) = par else {
                return Err(CliError::Usage("quantile needs a single shape".into()));
            };
            Ok(ctx.points("gamma quantile", &base, "p", &ps, |prob| {
                let x = gv::quantile(&par, prob, cfg)?;
                // a CDF error of ε moves the root by about ε / f(x)
                let est = if x > 0.0 {
                    let f = gv::pdf(&par, x, cfg)?.value;
                    4.0 * cfg.quad_abs_tol / f
                } else {
                    0.0
                };
                Ok(DistributionResult::new(x, est, exact_svar_core::Method::GammaQuantile))
            }))
        }
    }
}

fn cmd_uniform(ctx: &Ctx, op: &UniformOp) -> Result<Emitted, CliError> {
    let plan = &ctx.settings.plan;
    match op {
        UniformOp::Cdf { n, at } | UniformOp::Pdf { n, at } => {
            let xs = parse_points(at)?;
            let is_cdf = matches!(op, UniformOp::Cdf { .. });
            if !is_cdf && *n < 4 {
                return Err(CliError::Usage(format!("uniform pdf needs n >= 4 (got {n})")));
            }
            let u = UniformVariance::new(*n, plan)?;
            let name = if is_cdf { "uniform cdf" } else { "uniform pdf" };
            Ok(ctx.points(name, &json!({"n": n}), "x", &xs, |x| if is_cdf { u.cdf(x) } else { u.pdf(x) }))
        }
        UniformOp::Bn { n } => {
            let t = Instant::now();
            let b = uv::estimate_b(*n, plan);
            let ms = t.elapsed().as_secs_f64() * 1e3;
            let (mut rec, err) = ctx.fill(OutputRecord::new("uniform bn", map(json!({"n": n}))), &b, ms);
            let closed = uv::b_closed_form(*n).ok();
            rec.extra.insert("closed_form".into(), json!(closed));
            rec.extra.insert("difference".into(), json!(closed.map(|c| rec.value - c)));
            rec.extra.entry("error").or_insert(Value::Null);
            Ok((vec![rec], err))
        }
        UniformOp::Moments { n } => {
            let (m, v) = uv::moments(*n)?;
            let recs = [("mean", m), ("variance", v)]
                .into_iter()
                .map(|(q, val)| {
                    let mut r = OutputRecord::new("uniform moments", map(json!({"n": n, "quantity": q})));
                    r.value = val;
                    r.est_error = 0.0;
                    r.method = "closed-form".into();
                    r
                })
                .collect();
            Ok((recs, None))
        }
        UniformOp::SimpleCdf { n, at } => {
            let xs = parse_points(at)?;
            let s = SimpleStat::new(*n, plan)?;
            Ok(ctx.points("uniform simple-cdf", &json!({"n": n}), "x", &xs, |x| s.cdf(x)))
        }
    }
}

fn cmd_test(ctx: &Ctx, a: &TestArgs) -> Result<Emitted, CliError> {
    let y = read_values(&a.data)?;
    let spec = parse_null_spec(&a.null)?;
    let variant = match a.variant {
        VariantArg::Centered => Variant::Centered,
        VariantArg::Half => Variant::Half,
    };
    let t = Instant::now();
    let r = run_test(&y, &spec, variant, a.level, &ctx.settings.plan)?;
    let ms = if ctx.no_timing { 0.0 } else { t.elapsed().as_secs_f64() * 1e3 };
    let inputs = map(json!({
        "data": a.data.display().to_string(),
        "null": a.null,
        "variant": variant.as_str(),
        "level": a.level,
        "n": r.n,
    }));
    let mut rec = OutputRecord::new("test", inputs);
    rec.value = r.p_value;
    rec.est_error = r.p_error;
    rec.method = match variant {
        Variant::Centered => "uniform-fourier",
        Variant::Half => "simple-stat-fourier",
    }
    .into();
    rec.elapsed_ms = ms;
    rec.extra.insert("statistic".into(), json!(crate::output::fmt17(r.statistic)));
    rec.extra.insert("reject".into(), json!(r.reject));
    rec.extra.insert("notes".into(), json!(r.notes.join("; ")));
    Ok((vec![rec], None))
}

fn overrides(g: &GlobalArgs) -> Overrides {
    Overrides {
        tol: g.tol,
        kmax: g.kmax,
        rho: g.rho,
        zcut: g.zcut.clone(),
        kernel: g.kernel.clone(),
        ..Default::default()
    }
}

/// Executes a parsed command, writing to `out` and diagnostics to `err`.
pub fn execute<W: Write, E: Write>(cli: &Cli, out: &mut W, err: &mut E) -> i32 {
    let settings = match resolve_from_env(&overrides(&cli.global)) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return e.exit_code();
        }
    };
    let ctx = Ctx {
        settings,
        no_timing: cli.global.no_timing,
    };
    let emitted = match &cli.command {
        Command::Gamma { op } => cmd_gamma(&ctx, op),
        Command::Uniform { op } => cmd_uniform(&ctx, op),
        Command::Test(a) => cmd_test(&ctx, a),
        Command::Verify(a) => {
            let mut v = Verifier::new(ctx.settings, a.seed);
            v.mc_samples = a.samples.max(1);
            v.scale_replicates = a.replicates.max(1);
            let results = v.run_suite(a.suite);
            let s = summary(&results);
            let _ = writeln!(out, "{s}");
            return if s["pass"] == json!(true) { 0 } else { 1 };
        }
    };
    match emitted {
        Ok((records, failure)) => {
            if let Err(e) = write_records(out, &records, cli.global.format) {
                let _ = writeln!(err, "{e}");
                return 2;
            }
            match failure {
                Some(e) => {
                    let _ = writeln!(err, "{e}");
                    e.exit_code()
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

/// Parses `args` (including the program name) and executes them.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
    E: Write,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{}", e.render());
            2
        }
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            0
        }
    }
}
