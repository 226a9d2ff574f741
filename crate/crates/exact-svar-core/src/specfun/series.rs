use crate::prelude::*;

/// Stopping rule for power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTolerance {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesTolerance {
    fn default() -> Self {
        SeriesTolerance {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_terms: 10_000,
        }
    }
}

impl SeriesTolerance {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize) -> crate::Result<Self> {
        if !(rel_tol > 0.0 && abs_tol > 0.0 && max_terms >= 1) {
            return Err(crate::error::domain("series tolerances must be positive"));
        }
        Ok(SeriesTolerance {
            rel_tol,
            abs_tol,
            max_terms,
        })
    }
}

/// Running sum that stops once three consecutive terms are negligible and
/// tracks the largest term seen (the cancellation monitor).
#[derive(Debug, Clone)]
pub(crate) struct Accumulator {
    pub sum: f64,
    pub max_term: f64,
    pub terms: usize,
    small_run: usize,
    tol: SeriesTolerance,
}

impl Accumulator {
    pub fn new(tol: SeriesTolerance) -> Self {
        Accumulator {
            sum: 0.0,
            max_term: 0.0,
            terms: 0,
            small_run: 0,
            tol,
        }
    }

    /// Adds a term and reports whether the series may stop.
    pub fn push(&mut self, term: f64) -> bool {
        self.sum += term;
        self.terms += 1;
        let a = term.abs();
        if a > self.max_term {
            self.max_term = a;
        }
        if a <= self.tol.rel_tol * self.sum.abs() + self.tol.abs_tol {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= 3
    }

    pub fn exhausted(&self) -> bool {
        self.terms >= self.tol.max_terms
    }

    /// `max|term| / |sum|`, infinite for a zero sum with nonzero terms.
    pub fn cancellation(&self) -> f64 {
        if self.sum == 0.0 {
            if self.max_term == 0.0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.max_term / self.sum.abs()).max(1.0)
        }
    }

    /// Error estimate combining the stopping tolerance and rounding growth.
    pub fn est_error(&self) -> f64 {
        self.tol.rel_tol * self.sum.abs()
            + 4.0 * f64::EPSILON * self.max_term * (self.terms as f64).sqrt()
    }

    pub fn fail(&self, what: &'static str) -> crate::Error {
        crate::Error::Convergence {
            what,
            partial: self.sum,
            bound: self.max_term,
            terms: self.terms,
        }
    }
}
