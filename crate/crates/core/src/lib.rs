//! Mean-sets of probability measures on locally finite graphs.
//!
//! The crate computes Fréchet-type mean-sets (argmin sets of
//! `M(v) = sum_s d(v, s)^c mu(s)`) exactly, on finite graphs, on implicit
//! infinite graphs, and on Cayley graphs of free groups. It also provides
//! the random-walk machinery describing which vertices of a multi-point
//! mean-set recur in sample mean-sets, and seeded Monte-Carlo experiment
//! runners.

pub mod error;
pub mod experiments;
pub mod free_group;
pub mod graph;
pub mod meanset;
pub mod measure;
pub mod multivertex;

pub use error::{Error, Result};

/// Exact rational used for probabilities and weights.
pub type Rational = num_rational::Ratio<i128>;
