use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every evaluation routine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    Domain(String),
    /// A series did not reach its tolerance within the term cap.
    Convergence {
        what: &'static str,
        partial: f64,
        bound: f64,
        terms: usize,
    },
    /// A quadrature or root search missed its error budget.
    Numerical {
        what: &'static str,
        best: f64,
        est_error: f64,
    },
    /// The request is well formed but not covered by the implemented theory.
    Unsupported(String),
    /// Bad input data; `index` is zero based.
    Data { index: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Convergence {
                what,
                partial,
                bound,
                terms,
            } => write!(
                f,
                "{what} did not converge after {terms} terms (partial {partial:e}, bound {bound:e})"
            ),
            Error::Numerical {
                what,
                best,
                est_error,
            } => write!(
                f,
                "{what} missed its error budget (best {best:e}, est. error {est_error:e})"
            ),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Data { index, message } => write!(f, "data error at index {index}: {message}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
