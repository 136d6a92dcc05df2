//! Stochastic-domination thresholds for extremal Ising Gibbs states on the
//! homogeneous tree and for fuzzy Potts measures, together with exact
//! finite-tree oracles used to check them.
//!
//! * [`ising`] solves the tree fixed-point equation and builds the transition
//!   matrices of the plus and minus states.
//! * [`domination`] decides domination between tree Markov chains and
//!   computes the smallest dominating field.
//! * [`fuzzy`] handles the fuzzy Potts free chain and the plus-boundary ratio
//!   recursion.
//! * [`oracle`] provides brute-force ground truth on finite trees.
//! * [`sweep`] evaluates the above over parameter grids, in parallel when the
//!   `parallel` feature is enabled.

pub mod cli;
pub mod domination;
pub mod error;
pub mod exec;
pub mod fuzzy;
pub mod ising;
pub mod oracle;
pub mod sweep;

pub use error::{Error, Result};
pub use exec::Exec;
