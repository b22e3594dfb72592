//! Synthesis of bipartite graphs with a prescribed number of maximal
//! independent sets, together with the exact counting oracle used to check
//! every construction.

pub mod constructions;
pub mod error;
pub mod format;
pub mod gadgets;
pub mod graph;
pub mod oracle;
pub mod pattern;
pub mod search;
pub mod synth;

pub use error::{Error, Result};

/// Exact count of (maximal) independent sets.
pub type BigCount = num_bigint::BigUint;
