//! Parent-law descriptions.

use crate::error::domain;
use crate::prelude::*;
use crate::Result;

/// `n` i.i.d. Γ(α, 1) variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParent {
    pub alpha: f64,
    pub n: usize,
}

impl GammaParent {
    pub fn new(alpha: f64, n: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(domain("gamma shape must be positive and finite"));
        }
        if n < 2 {
            return Err(domain("sample size must be at least 2"));
        }
        Ok(GammaParent { alpha, n })
    }
}

/// Independent Γ(αⱼ, 1) variables with individual shapes.
#[derive(Debug, Clone, PartialEq)]
pub struct HeteroGammaParent {
    pub alphas: Vec<f64>,
    pub alpha_sum: f64,
}

impl HeteroGammaParent {
    pub fn new(alphas: Vec<f64>) -> Result<Self> {
        if alphas.len() < 2 {
            return Err(domain("need at least 2 shapes"));
        }
        if alphas.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
            return Err(domain("every shape must be positive and finite"));
        }
        let alpha_sum = alphas.iter().sum();
        Ok(HeteroGammaParent { alphas, alpha_sum })
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }
}

impl From<GammaParent> for HeteroGammaParent {
    fn from(p: GammaParent) -> Self {
        HeteroGammaParent {
            alphas: vec![p.alpha; p.n],
            alpha_sum: p.alpha * p.n as f64,
        }
    }
}

/// `n` i.i.d. Uniform[0, 1] variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformParent {
    pub n: usize,
}

impl UniformParent {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(domain("sample size must be at least 2"));
        }
        Ok(UniformParent { n })
    }
}

/// Parent law plus statistic, as consumed by the Monte-Carlo oracle.
#[derive(Debug, Clone, PartialEq)]
pub enum ParentSpec {
    Gamma(GammaParent),
    HeteroGamma(HeteroGammaParent),
    /// Uniform parent with the centered statistic `Σ(Uᵢ − Ū)²`.
    Uniform(UniformParent),
    /// Uniform parent with the statistic `Σ(Uᵢ − 1/2)²`.
    UniformHalf(UniformParent),
}

impl ParentSpec {
    pub fn n(&self) -> usize {
        match self {
            ParentSpec::Gamma(p) => p.n,
            ParentSpec::HeteroGamma(p) => p.n(),
            ParentSpec::Uniform(p) | ParentSpec::UniformHalf(p) => p.n,
        }
    }
}
