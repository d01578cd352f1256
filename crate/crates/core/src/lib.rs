//! Exact graph-coloring algorithms built on a branching framework with
//! leaf indexing, together with the query-cost models and exponent
//! computations that go with them.
#![no_std]

extern crate alloc;

pub mod branching;
pub mod chromatic;
pub mod exponents;
pub mod generators;
pub mod graph;
pub mod kcolor;
pub mod mis;
pub mod oracle;
pub mod vertex_set;

pub use graph::{Graph, GraphError};
pub use vertex_set::VertexSet;
