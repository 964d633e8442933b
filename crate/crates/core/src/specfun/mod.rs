//! Special functions required by the closed-form solutions: complex gamma,
//! Bessel J0/J1 with zeros, confluent and Gauss hypergeometric functions,
//! the Whittaker M function with second index zero, and classical orthogonal
//! polynomials.
//!
//! All routines are pure functions targeting ~1e-13 relative accuracy in
//! double precision; series with destructive cancellation are accumulated in
//! double-double arithmetic internally.

pub mod bessel;
pub mod gamma;
pub mod hyp;
pub mod poly;

pub use bessel::{bessel_j0, bessel_j0_zero, bessel_j1};
pub use gamma::{gamma, gamma_real, log_gamma};
pub use hyp::{hyp1f1, hyp2f1, hyp2f1_complex, whittaker_m};
pub use poly::{laguerre_l, legendre_p};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Hard cap on series summation lengths (generous: the worst conditioned
/// series used here need a few hundred terms).
pub(crate) const MAX_SERIES_TERMS: usize = 100_000;

/// Accuracy contract for series evaluation.
#[derive(Debug, Clone, Copy)]
pub struct AccuracyBudget {
    /// Target relative error.
    pub rel_tol: f64,
    /// Maximum number of series terms before reporting non-convergence.
    pub max_terms: usize,
}

impl Default for AccuracyBudget {
    fn default() -> Self {
        AccuracyBudget {
            rel_tol: 1e-13,
            max_terms: MAX_SERIES_TERMS,
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum SpecFunError {
    #[error("{what} at pole (value {value})")]
    Pole { what: &'static str, value: f64 },
    #[error("non-finite {0}")]
    NonFinite(&'static str),
    #[error("{what} did not converge within {terms} terms")]
    NoConvergence { what: &'static str, terms: usize },
    #[error("2F1 near x=1 with non-positive integer parameter gap {gap} (x={x})")]
    LogCaseNearUnit { gap: i64, x: f64 },
}
