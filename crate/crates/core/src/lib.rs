//! Numerical Segal-Bargmann analysis for coupled supersymmetric oscillators.
//!
//! A coupled SUSY system pairs two factorized Hamiltonians through four
//! ladder operators `a`, `b` and their adjoints acting on weighted
//! polynomial spaces over the real line. For the concrete family treated
//! here (superpotential `x^n`, unbroken phase) the bound states are
//! polynomials times the generalized Gaussian `exp(-x^{2n}/(2n))`, and the
//! analytic side consists of two spaces of entire functions with modified
//! Bessel weights. This crate provides:
//!
//! - [`specfun`]: the special functions everything else is built from
//!   (log-gamma, `0F1`, modified Bessel `I`/`K`, generalized Gaussian
//!   moments),
//! - [`realline`]: sparse weighted-polynomial algebra, ladder operators,
//!   eigenfunctions and their Rodrigues forms, moment-based inner products,
//! - [`holomorphic`]: the two holomorphic sectors, their orthonormal
//!   monomial bases, radial weights, and reproducing kernels,
//! - [`quadrature`]: self-calibrating Gauss-Legendre rules on the line and
//!   in the plane (polar form) for the weighted integrals,
//! - [`transforms`]: the integral kernels coupling position space to the
//!   holomorphic sectors, forward/inverse transforms, and residuals for the
//!   intertwining and coherent-state identities.
//!
//! Everything is plain `f64`/`Complex64`; all constructions are
//! deterministic (fixed node orderings, pairwise summation) so that repeated
//! runs are bit-identical.

pub mod holomorphic;
pub mod quadrature;
pub mod realline;
pub mod specfun;
pub mod transforms;

mod error;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
