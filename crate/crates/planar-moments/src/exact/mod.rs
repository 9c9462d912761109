//! Exact arithmetic: arbitrary-precision rationals, formal polynomials in
//! the non-Hermiticity parameter, and the combinatorial primitives shared by
//! every formula in the crate.

pub mod comb;
mod rational;
mod scalar;
mod taupoly;

pub use rational::{ParseRationalError, Rational};
pub use scalar::Scalar;
pub use taupoly::{ParseTauPolyError, TauPoly};
