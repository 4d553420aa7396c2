//! Crate-wide error type.

use crate::realline::Sector;

/// Errors reported by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the documented domain of an operation.
    #[error("domain error in {context}: {message}")]
    Domain {
        context: &'static str,
        message: String,
    },

    /// A series failed to meet its tolerance within the term budget.
    #[error("series for {context} did not converge within {max_terms} terms")]
    NonConvergence {
        context: &'static str,
        max_terms: usize,
    },

    /// Two operands live in different sectors (or have different `n`).
    #[error("sector mismatch: {message}")]
    SectorMismatch { message: String },

    /// A coefficient sits on an exponent the sector lattice does not admit.
    #[error("exponent {exponent} is not on the sector-{sector:?} lattice for n = {n}")]
    LatticeViolation {
        exponent: i64,
        sector: Sector,
        n: u32,
    },

    /// A quadrature rule could not reach its tolerance within the node budget.
    #[error("quadrature calibration failed: {message}")]
    Calibration { message: String },

    /// The integrand produced a non-finite value at a quadrature node.
    #[error("non-finite sample at node {index} ({at}): {message}")]
    NonFiniteSample {
        index: usize,
        at: String,
        message: String,
    },

    /// A function fell outside the span the spectral expansion can represent.
    #[error("expansion residual {residual:e} exceeds the allowed {limit:e}")]
    ExpansionResidual { residual: f64, limit: f64 },

    /// Evaluation requested at a point where the expression is singular.
    #[error("singular point: {message}")]
    SingularPoint { message: String },

    /// A log-space exponent would overflow `f64` range.
    #[error("overflow in {context}")]
    Overflow { context: &'static str },
}

/// Convenience alias used by every fallible operation in the crate.
pub type Result<T> = std::result::Result<T, Error>;
