/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Exact boundary value (e.g. the distribution function at 0).
    Boundary,
    GammaIntegral,
    GammaHeteroIntegral,
    GammaDensityIntegral,
    GammaQuantile,
    UniformFourier,
    UniformFourierDensity,
    UniformClosedForm,
    SimpleStatFourier,
    SimpleStatClosedForm,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Boundary => "boundary",
            Method::GammaIntegral => "gamma-integral",
            Method::GammaHeteroIntegral => "gamma-hetero-integral",
            Method::GammaDensityIntegral => "gamma-density-integral",
            Method::GammaQuantile => "gamma-quantile",
            Method::UniformFourier => "uniform-fourier",
            Method::UniformFourierDensity => "uniform-fourier-density",
            Method::UniformClosedForm => "uniform-closed-form",
            Method::SimpleStatFourier => "simple-stat-fourier",
            Method::SimpleStatClosedForm => "simple-stat-closed-form",
        }
    }
}

/// A distribution value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionResult {
    pub value: f64,
    pub est_error: f64,
    pub method: Method,
    /// Set when the formula is a derived companion rather than the
    /// primary representation (the gamma density).
    pub derived: bool,
}

impl DistributionResult {
    pub fn new(value: f64, est_error: f64, method: Method) -> Self {
        DistributionResult {
            value,
            est_error,
            method,
            derived: false,
        }
    }
}
