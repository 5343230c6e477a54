//! Algebraic and numerical treatment of the non-degenerate parametric
//! amplifier built on the two-mode boson realization of su(1,1).
//!
//! The closed-form results (spectrum, tilted eigenfunctions, geometric phase,
//! Mandel parameters) live next to brute-force oracles (truncated Fock-space
//! matrices, dense diagonalization, quadrature, and direct Schrödinger
//! evolution) so every formula can be cross-checked numerically.

// Parameter validation writes `!(x > 0.0)` on purpose: the negation also
// rejects NaN, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amplifier;
pub mod berry;
mod error;
pub mod fock;
pub mod numerics;
pub mod photon_stats;
pub mod polar;
pub mod su11;
pub mod suites;

pub use error::{Error, Result};
