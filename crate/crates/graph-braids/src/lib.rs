//! Exact homology of graph braid groups.
//!
//! The pipeline: a finite graph with a rotation system is subdivided until the
//! discretized configuration space models the topological one, a spanning tree
//! is chosen and labeled by a depth-first walk, and the resulting discrete
//! gradient vector field reduces the cubical chain complex to its critical
//! cells. Homology is read off integer Smith normal forms. For trees the
//! critical-cell counts are also produced in closed form, as Betti polynomials
//! and as Hilbert series of the summands of the critical-cell module.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod layout;
pub mod morse;
pub mod parse;
pub mod report;

pub use error::{Error, Result};
