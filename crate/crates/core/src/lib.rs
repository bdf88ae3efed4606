//! Switching K-systems and monotone Boolean functions.
//!
//! The crate links three views of a regulatory network node:
//! a K-system parameter family, an ordered tuple of positive monotone
//! Boolean functions, and an algebraic interaction function that jointly
//! realizes that tuple.
//!
//! - [`boolean_core`]: hypercube corners, MBF+(n), implication, collapse, eta.
//! - [`interaction`]: sum / product-of-sums / sum-of-products-of-sums structures.
//! - [`realizability`]: witnesses, certificates and the class checkers.
//! - [`ksystem`]: networks, K collections, Phi^K and state transition graphs.
//! - [`paramgraph`]: factor graphs and the product parameter graph.
//! - [`cli`]: command implementations behind the `kswitch` binary.

pub mod boolean_core;
pub mod gallery;
pub mod cli;
pub mod interaction;
pub mod ksystem;
pub mod lp;
pub mod paramgraph;
pub mod rational;
pub mod realizability;

pub use boolean_core::{Corner, MbfFunction, OrderedTuple, Side};
pub use interaction::{ClassTag, InteractionStructure};
pub use rational::Q;
