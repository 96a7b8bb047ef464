//! Exact scalar arithmetic and the combinatorial primitives everything else
//! is built on.

mod combinat;
mod poly;
mod rational;

pub use combinat::{binomial, binomial_basis, binomial_int, factorial, pochhammer, stirling2, Convention};
pub use poly::Poly;
pub use rational::Rational;
