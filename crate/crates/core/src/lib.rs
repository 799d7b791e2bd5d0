//! Exact verification of ½ℤ-graded Lie algebras given by structure-constant
//! rules: Lie-axiom checks, per-degree spaces of δ-derivations on truncated
//! windows, and transposed Poisson compatibility of commutative products.

pub mod algebra;
pub mod catalog;
pub mod deriv;
pub mod dsl;
pub mod error;
pub mod linalg;
pub mod rational;
pub mod tpa;

pub use error::{Error, Result};
pub use rational::Rational;
