//! Exact search and structural analysis for linkage problems in oriented
//! graphs: subdivision solving with prescribed path orders, extremal
//! counterexample generators with verifiers, expansion/acceptability/
//! circularity checkers, constructive path procedures, and randomized
//! proportional partitions.
//!
//! Throughout the crate the *length* of a path means its order (vertex
//! count), never its arc count.

pub mod bitset;
pub mod builders;
pub mod constructions;
pub mod graph;
pub mod parts;
pub mod pattern;
pub mod report;
pub mod pathops;
pub mod solver;
pub mod structure;

pub use bitset::VertexSet;
pub use graph::{parse_graph, serialize_graph, DenseDigraph, Digraph, OrientedGraph, Path};
pub use parts::{parse_parts, serialize_parts, PartSystem};
pub use pattern::{parse_pattern, serialize_pattern, PatternGraph};
pub use report::Report;
