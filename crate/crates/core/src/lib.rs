//! Exact computations around the depth-graded motivic Lie algebra: Ihara
//! brackets of depth-1 generators, restricted even period polynomials,
//! Bernoulli/Eisenstein/Hecke identities and GL2 character calculus.

pub mod depthlie;
pub mod eisenstein;
pub mod error;
pub mod exactla;
pub mod ncalg;
pub mod periodpoly;
pub mod primes;
pub mod repcalc;

pub use error::{Error, Result};
pub use exactla::{QMatrix, Rational};
