//! Numerical knobs shared by the evaluators.

use crate::error::domain;
use crate::kernels::KernelMethod;
use crate::specfun::SeriesTolerance;
use crate::Result;

/// Quadrature, truncation and kernel settings for the gamma-parent formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub quad_abs_tol: f64,
    pub quad_rel_tol: f64,
    /// Lower truncation of the `z` integral; `None` scans the integrand
    /// envelope until the neglected tail is below `quad_abs_tol / 4`.
    pub z_cut_neg: Option<f64>,
    /// Upper truncation of the `z` integral; `None` as for `z_cut_neg`.
    pub z_cut_pos: Option<f64>,
    pub series: SeriesTolerance,
    /// Circle radius for [`KernelMethod::Contour`]; `None` minimizes the
    /// integrand magnitude bound.
    pub contour_rho: Option<f64>,
    pub kernel: KernelMethod,
    pub max_segments: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            quad_abs_tol: 1e-9,
            quad_rel_tol: 1e-12,
            z_cut_neg: None,
            z_cut_pos: None,
            series: SeriesTolerance::default(),
            contour_rho: None,
            kernel: KernelMethod::Auto,
            max_segments: 4000,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.quad_abs_tol > 0.0 && self.quad_rel_tol > 0.0) {
            return Err(domain("quadrature tolerances must be positive"));
        }
        if let Some(z) = self.z_cut_neg {
            if !(z < 0.0) {
                return Err(domain("z_cut_neg must be negative"));
            }
        }
        if let Some(z) = self.z_cut_pos {
            if !(z > 0.0) {
                return Err(domain("z_cut_pos must be positive"));
            }
        }
        if let Some(r) = self.contour_rho {
            if !(r > 0.0) {
                return Err(domain("contour_rho must be positive"));
            }
        }
        if self.max_segments < 1 {
            return Err(domain("max_segments must be at least 1"));
        }
        Ok(())
    }
}

/// How the Fourier series is truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailPolicy {
    /// Always use `k_max` terms.
    Fixed,
    /// Double the number of terms until the tail estimate meets `tol`.
    Adaptive,
}

/// Settings for the uniform-parent Fourier series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierPlan {
    pub k_max: usize,
    pub tail_policy: TailPolicy,
    /// Initial Gauss–Kronrod panels on the outer `y` integral.
    pub quad_nodes_outer: usize,
    /// Minimum Gauss–Kronrod panels on the unit-interval integral; more are
    /// added in proportion to the oscillation count.
    pub quad_nodes_unit: usize,
    /// Absolute accuracy target for the distribution function.
    pub tol: f64,
}

impl Default for FourierPlan {
    fn default() -> Self {
        FourierPlan {
            k_max: 2000,
            tail_policy: TailPolicy::Adaptive,
            quad_nodes_outer: 8,
            quad_nodes_unit: 8,
            tol: 1e-8,
        }
    }
}

impl FourierPlan {
    pub fn validate(&self) -> Result<()> {
        if self.k_max < 1 {
            return Err(domain("k_max must be at least 1"));
        }
        if self.quad_nodes_outer < 8 || self.quad_nodes_unit < 8 {
            return Err(domain("node counts must be at least 8"));
        }
        if !(self.tol > 0.0) {
            return Err(domain("tol must be positive"));
        }
        Ok(())
    }
}
