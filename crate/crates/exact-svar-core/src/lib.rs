//! Exact distribution of the sample variance statistic `Q = Σ(Xᵢ − X̄)²`
//! for i.i.d. gamma and uniform parents.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled. All evaluation routines are pure functions of their inputs.

#![cfg_attr(not(feature = "std"), no_std)]
// float methods come from `num_traits::Float` only without std
#![cfg_attr(feature = "std", allow(unused_imports))]
// `!(x > 0.0)` style checks also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod prelude;

pub mod config;
pub mod dd;
pub mod error;
pub mod gamma_variance;
pub mod kernels;
pub mod parent;
pub mod quad;
pub mod result;
pub mod specfun;
pub mod uniform_variance;

pub use config::{EvalConfig, FourierPlan, TailPolicy};
pub use error::{Error, Result};
pub use parent::{GammaParent, HeteroGammaParent, ParentSpec, UniformParent};
pub use result::{DistributionResult, Method};
pub use specfun::{Complex64, SeriesTolerance};
