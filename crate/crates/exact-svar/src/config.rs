//! Numerical settings for a CLI run.
//!
//! Precedence: command-line flags, then the key-value file named by
//! `EXACT_SVAR_CONFIG`, then the library defaults.
//!
//! The file holds `key = value` lines; `#` starts a comment. Keys:
//! `tol`, `quad_rel_tol`, `kmax`, `rho`, `zcut`, `kernel`, `max_segments`,
//! `tail_policy` (`fixed` or `adaptive`).

use crate::error::CliError;
use exact_svar_core::kernels::KernelMethod;
use exact_svar_core::{EvalConfig, FourierPlan, TailPolicy};
use std::path::Path;

pub const CONFIG_ENV: &str = "EXACT_SVAR_CONFIG";

/// Both configuration records used by the evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Settings {
    pub eval: EvalConfig,
    pub plan: FourierPlan,
}

/// Values that may come from flags or the config file; `None` leaves the
/// lower-precedence value in place.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    /// Absolute accuracy target for both the gamma quadrature and the
    /// uniform series.
    pub tol: Option<f64>,
    pub quad_rel_tol: Option<f64>,
    pub kmax: Option<usize>,
    pub rho: Option<f64>,
    /// `Z` for a symmetric cut `[−Z, Z]`, or `LO:HI`.
    pub zcut: Option<String>,
    pub kernel: Option<String>,
    pub max_segments: Option<usize>,
    pub tail_policy: Option<String>,
}

impl Overrides {
    pub fn apply(&self, s: &mut Settings) -> Result<(), CliError> {
        if let Some(t) = self.tol {
            s.eval.quad_abs_tol = t;
            s.plan.tol = t;
        }
        if let Some(t) = self.quad_rel_tol {
            s.eval.quad_rel_tol = t;
        }
        if let Some(k) = self.kmax {
            s.plan.k_max = k;
        }
        if let Some(r) = self.rho {
            s.eval.contour_rho = Some(r);
        }
        if let Some(z) = &self.zcut {
            let (lo, hi) = parse_zcut(z)?;
            s.eval.z_cut_neg = Some(lo);
            s.eval.z_cut_pos = Some(hi);
        }
        if let Some(k) = &self.kernel {
            s.eval.kernel = KernelMethod::parse_kernel(k)
                .ok_or_else(|| CliError::Usage(format!("unknown kernel method '{k}'")))?;
        }
        if let Some(m) = self.max_segments {
            s.eval.max_segments = m;
        }
        if let Some(p) = &self.tail_policy {
            s.plan.tail_policy = match p.as_str() {
                "fixed" => TailPolicy::Fixed,
                "adaptive" => TailPolicy::Adaptive,
                _ => return Err(CliError::Usage(format!("unknown tail policy '{p}'"))),
            };
        }
        Ok(())
    }
}

fn parse_zcut(z: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("bad z cut '{z}': expected Z or LO:HI"));
    match z.split_once(':') {
        Some((a, b)) => Ok((
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        )),
        None => {
            let v: f64 = z.trim().parse().map_err(|_| bad())?;
            Ok((-v.abs(), v.abs()))
        }
    }
}

/// Parses the key-value config format.
pub fn parse_config(text: &str) -> Result<Overrides, CliError> {
    let mut o = Overrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: &str| CliError::Usage(format!("config line {}: {m}", i + 1));
        let (k, v) = line.split_once('=').ok_or_else(|| err("expected key = value"))?;
        let (k, v) = (k.trim(), v.trim().trim_matches('"'));
        let num = || v.parse::<f64>().map_err(|_| err("expected a number"));
        let int = || v.parse::<usize>().map_err(|_| err("expected an integer"));
        match k {
            "tol" => o.tol = Some(num()?),
            "quad_rel_tol" => o.quad_rel_tol = Some(num()?),
            "kmax" => o.kmax = Some(int()?),
            "rho" => o.rho = Some(num()?),
            "zcut" => o.zcut = Some(v.to_string()),
            "kernel" => o.kernel = Some(v.to_string()),
            "max_segments" => o.max_segments = Some(int()?),
            "tail_policy" => o.tail_policy = Some(v.to_string()),
            _ => return Err(err(&format!("unknown key '{k}'"))),
        }
    }
    Ok(o)
}

pub fn load_config_file(path: &Path) -> Result<Overrides, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Defaults, then the file named by `env_path` (if any), then `flags`.
pub fn resolve(flags: &Overrides, env_path: Option<&Path>) -> Result<Settings, CliError> {
    let mut s = Settings::default();
    if let Some(p) = env_path {
        load_config_file(p)?.apply(&mut s)?;
    }
    flags.apply(&mut s)?;
    // validated once so a flag can repair a bad file value
    s.eval.validate()?;
    s.plan.validate()?;
    Ok(s)
}

/// [`resolve`] with the path taken from `EXACT_SVAR_CONFIG`.
pub fn resolve_from_env(flags: &Overrides) -> Result<Settings, CliError> {
    let p = std::env::var_os(CONFIG_ENV);
    resolve(flags, p.as_deref().map(Path::new))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let dir = std::env::temp_dir().join(format!("svar-cfg-{}", std::process::id()));
        std::fs::write(&dir, "# comment\ntol = 1e-7\nkmax = 500 # trailing\nzcut = -9:30\n").unwrap();
        let s = resolve(&Overrides::default(), Some(&dir)).unwrap();
        assert_eq!(s.plan.tol, 1e-7);
        assert_eq!(s.eval.quad_abs_tol, 1e-7);
        assert_eq!(s.plan.k_max, 500);
        assert_eq!((s.eval.z_cut_neg, s.eval.z_cut_pos), (Some(-9.0), Some(30.0)));
        let flags = Overrides {
            kmax: Some(64),
            zcut: Some("14".into()),
            ..Default::default()
        };
        let s = resolve(&flags, Some(&dir)).unwrap();
        assert_eq!(s.plan.k_max, 64);
        assert_eq!(s.plan.tol, 1e-7);
        assert_eq!(s.eval.z_cut_neg, Some(-14.0));
        let s = resolve(&Overrides::default(), None).unwrap();
        assert_eq!(s, Settings::default());
        std::fs::remove_file(&dir).unwrap();
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse_config("tol 1e-3").is_err());
        assert!(parse_config("speed = 3").is_err());
        assert!(parse_config("kmax = many").is_err());
        let o = parse_config("kernel = contour\nrho = 2").unwrap();
        let mut s = Settings::default();
        o.apply(&mut s).unwrap();
        assert_eq!(s.eval.kernel, KernelMethod::Contour);
        assert_eq!(s.eval.contour_rho, Some(2.0));
        let o = Overrides {
            tol: Some(-1.0),
            ..Default::default()
        };
        assert!(resolve(&o, None).is_err());
    }
}
