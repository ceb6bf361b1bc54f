//! Finite real spectral triples over exact matrices: conformal twisting,
//! retwisting, twisted fluctuations and the KO sign table.
//!
//! The real structure is stored as a matrix `K` with `J(h) = K·conj(h)`, so
//! every condition becomes a matrix identity over the Gaussian rationals.

mod fluctuation;
mod matrix;
mod triple;
mod twist;

pub use fluctuation::{commutator_pairs, OneForm};
pub use matrix::{Matrix, Span};
pub use triple::{
    k_prime, ko_dimension, parse_factor, parse_fixture, parse_json, read_file, AlgebraBasis,
    AntiLinearOp, ConformalFactor, FactorFile, FiniteTriple, Fixture,
};
pub use twist::{build_twisted, retwist, verify_twisted, TwistedTriple};
