//! Directed and undirected graph models plus the generic algorithms the rest
//! of the crate builds on.

mod algo;
mod digraph;
mod path;
mod treewidth;
mod undirected;

pub use algo::{
    reachable_avoiding, reaches, shortest_path, shortest_path_avoiding,
    strongly_connected_components, underlying_undirected, Direction,
};
pub use digraph::WeightedDigraph;
pub use path::DirectedPath;
pub use treewidth::{
    elimination_width, treewidth_exact, treewidth_upper_bound, Treewidth, TREEWIDTH_EXACT_CAP,
};
pub use undirected::UndirectedGraph;

/// Vertex identifier. Deterministic tie-breaks always prefer smaller ids.
pub type Vertex = u32;

/// An arc `(tail, head)`.
pub type Arc = (Vertex, Vertex);
