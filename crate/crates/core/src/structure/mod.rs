//! Structural analysis of inclusion-minimal solutions: suppression of
//! degree-two vertices, important and marked vertices along request paths,
//! ladders, and the replacement of long ladders by short ones.

mod important;
mod ladder;
mod marked;
mod pipeline;
mod protrusion;
mod recognize;
mod segment;
mod suppress;

pub use important::{important_vertices, Anchor, ImportantSet, Label, Side};
pub use ladder::{ladder_arcs_with_offset, ladder_two_path_decomposition, make_ladder, Corners, LadderSpec};
pub use marked::{marked_vertices, nonimportant_outdegree_violations, unmarked_between, MarkedSet, Quadruple};
pub use pipeline::{
    analyse_paths, certify_treewidth_bound, reduce_length, width_of, GraphStats, PathChecks, PathRecord,
    RoundRecord, StructureReport, TreewidthCertificate, WidthValue, REPORT_SCHEMA_VERSION,
};
pub use protrusion::{protrusion_replace, Replacement, REPLACEMENT_VERTEX_CAP};
pub use recognize::{is_ladder_subdivision, is_ladder_undirected, LadderFailure, LadderVerdict};
pub use segment::{detect_ladder_segments, BoundaryShape, LadderSegment};
pub use suppress::{suppress_degree_two, ExpansionMap};
