//! Deterministic balanced low-conductance cuts, vertex-expansion certificates
//! and k-vertex-connectivity, with brute-force oracles for small graphs.

pub mod balcut;
pub mod cutmatching;
pub mod error;
pub mod expanders;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod jtree;
pub mod oracle;
pub mod pagerank;
pub mod sparsify;
pub mod vconn;

pub use error::{Error, Result};
pub use graph::{Cut, Graph, SeparationTriple, WeightedGraph};
