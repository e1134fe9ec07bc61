//! Exact solvers, solution-structure analysis and hardness-instance
//! generation for the directed Steiner network problem on planar hosts.

pub mod dsn;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod reduction;
pub mod solvers;
pub mod structure;
pub mod weight;

pub use dsn::{DsnInstance, SolutionSubgraph, Verdict};
pub use error::{Error, Result};
pub use graph::{Arc, Vertex, WeightedDigraph};
pub use weight::Weight;
