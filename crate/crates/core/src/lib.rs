//! Exact umbral calculus for multiple power sums at negative indices.
//!
//! The crate evaluates nested sums
//! `H(N) = sum over N > i_1 > ... > i_r > 0 of i_1^n_1 ... i_r^n_r`
//! through Bernoulli-symbol reductions, builds the extended Bernoulli
//! polynomials that come with them, and computes the multiple zeta function
//! at non-positive integers in three independent ways.
//!
//! Every value is an exact [`Rational`]; there is no floating-point path.
//!
//! Module map:
//!
//! * [`arith`]: rationals, dense polynomials, binomials, Stirling numbers.
//! * [`bernoulli`]: Bernoulli and Apostol-Bernoulli numbers and polynomials.
//! * [`umbral`]: multivariate symbol polynomials and the nested reduction engine.
//! * [`powersum`]: multiple power sums, weak sums, truncated polylogarithms.
//! * [`extbern`]: shifted extended Bernoulli polynomials and their identities.
//! * [`mzv`]: multiple zeta values at non-positive integers.
//! * [`egf`]: truncated exponential generating functions and their recurrences.
//! * [`verify`]: named property sweeps, optionally run in parallel.

pub mod arith;
pub mod bernoulli;
pub mod egf;
mod error;
pub mod extbern;
pub mod mzv;
pub mod powersum;
pub mod umbral;
pub mod verify;

pub use arith::{Poly, Rational};
pub use error::{Error, Result};
pub use powersum::MultiIndex;
