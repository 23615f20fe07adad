//! Desk-scale laboratory for spectral extremal problems over
//! subdivision-free graph families.
//!
//! The crate computes, for a family of pattern graphs, the n-vertex
//! subdivision-free graphs of maximum spectral radius by exhaustive
//! isomorph-free enumeration, and provides the supporting machinery:
//! bitset graphs with graph6 I/O and canonical forms ([`graph`]),
//! Perron vectors and eigenvector shift certificates ([`spectral`]),
//! family invariants ([`invariants`]), exact topological containment
//! ([`subdivision`]), the dominator-partition rewrites ([`transforms`]),
//! and the extremal search itself ([`search`]).

pub mod graph;
pub mod invariants;
pub mod search;
pub mod spectral;
pub mod subdivision;
pub mod transforms;

pub use graph::{Graph, VertexSet};
