//! Special functions used by the distribution formulas.

mod erf;
mod gamma;
mod hermite;
mod hyper;
mod series;

pub use num_complex::Complex64;

pub use erf::{erf_complex, erf_real, erfc_complex, erfc_real, erfcx_real, faddeeva};
pub use gamma::{ln_gamma, reg_lower_gamma, reg_upper_gamma};
pub use hermite::{hermite_he, HermiteIter, NormalizedHermiteIter};
pub use hyper::{
    hyp0f1, hyp0f1_value, hyp0f2, hyp1f1, hyp1f1_series, hyp1f1_value, SeriesValue,
};
pub use series::SeriesTolerance;

pub(crate) use gamma::{lgamma, rgamma};
pub(crate) use hyper::ln_hyp1f1_pos;
pub(crate) use series::Accumulator;

/// Standard normal density.
pub fn norm_pdf(x: f64) -> f64 {
    use num_traits::Float;
    0.398_942_280_401_432_7 * (-0.5 * x * x).exp()
}

/// `ln φ(x)`.
pub fn ln_norm_pdf(x: f64) -> f64 {
    -0.918_938_533_204_672_8 - 0.5 * x * x
}

/// Standard normal distribution function.
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * core::f64::consts::FRAC_1_SQRT_2)
}
