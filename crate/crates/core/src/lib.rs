//! Exact verification of ν-twisted real structures.
//!
//! * [`scalar`]: Gaussian rationals and Laurent polynomials in a formal `q`.
//! * [`ncalg`]: the quantum disc, its grading, ν, the skew-derivations ∂±,
//!   and the quantum cone.
//! * [`graded_triple`]: the quantum-cone spectral triple and its axiom checks.
//! * [`conformal`]: finite-dimensional triples over exact matrices, conformal
//!   twisting, retwisting and twisted fluctuations.
//! * [`suite`]: configurable verification runs and report rendering.

pub mod conformal;
pub mod error;
pub mod graded_triple;
pub mod ncalg;
pub mod report;
pub mod scalar;
pub mod suite;

pub use error::{Error, ParseError, Result};
