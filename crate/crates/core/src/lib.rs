//! Slope stability toolkit with exact arithmetic.
//!
//! A generic Harder-Narasimhan engine over Δ-steps, concrete categories
//! (integers under division, line configurations, sheaves on the projective
//! line), binomial-basis slope polynomials, effective boundedness estimates
//! for sheaves on polarized varieties and a tilted central charge on
//! surfaces.

pub mod arith;
pub mod binom;
pub mod bounds;
pub mod cli;
pub mod hn;
pub mod p1;
pub mod rational;
pub mod tilt;

pub use rational::Rational;
