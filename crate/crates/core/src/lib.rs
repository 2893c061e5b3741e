//! Finite stochastic effectivity functions.
//!
//! States live in small named spaces ([`FinSpace`]), events are bitmask
//! subsets, and every probability is an exact rational. An effectivity
//! function assigns each state a finitely generated, upward-closed family of
//! sets of subprobabilities. On top of that sit convolution, morphisms and
//! congruences, logical and behavioral equivalence, characteristic
//! relations, and a small threshold modal logic.

pub mod charrel;
pub mod compose;
pub mod effectivity;
pub mod equiv;
pub mod error;
pub mod finspace;
pub mod geometry;
pub mod kernels;
pub mod logiclang;
mod lp;
pub mod rational;

pub use error::{Error, Result};
pub use finspace::{FinSpace, MeasMap, Partition, SubProb, Subset};
pub use rational::Rational;
