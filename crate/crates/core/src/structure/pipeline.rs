use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::dsn::{is_inclusion_minimal, normalized_requests_in, validate, DsnInstance, SolutionSubgraph, Verdict};
use crate::error::{Error, Result};
use crate::graph::{
    shortest_path_avoiding, treewidth_exact, treewidth_upper_bound, underlying_undirected, Arc, DirectedPath,
    UndirectedGraph, Vertex, WeightedDigraph, TREEWIDTH_EXACT_CAP,
};

use super::important::{important_vertices, ImportantSet};
use super::marked::{marked_vertices, nonimportant_outdegree_violations, unmarked_between, MarkedSet};
use super::protrusion::{protrusion_replace, Replacement};
use super::segment::{detect_ladder_segments, LadderSegment};
use super::suppress::suppress_graph;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub arcs: usize,
}

impl GraphStats {
    fn of(g: &WeightedDigraph) -> Self {
        Self {
            vertices: g.vertex_count(),
            arcs: g.arc_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathChecks {
    /// `|I_P| <= 2q - 2`.
    pub important_bound: bool,
    /// `|Q_P| <= 4 |I_P|`.
    pub marked_bound: bool,
    /// `|g_P^{-1}(x)| <= 2` for every terminal.
    pub anchor_load: bool,
    pub unlabelled: Vec<Vertex>,
    pub unanchored: Vec<Vertex>,
    /// Important vertices whose quadruple breaks `p^1 <= p^2 <= p_j <= p^3 <= p^4`.
    pub misordered: Vec<Vertex>,
    /// Important vertices with more than two unmarked vertices strictly
    /// between `p^1` and `p^4`.
    pub crowded: Vec<Vertex>,
    pub nonimportant_outdegree: Vec<Vertex>,
}

impl PathChecks {
    pub fn all_hold(&self) -> bool {
        self.important_bound
            && self.marked_bound
            && self.anchor_load
            && self.unlabelled.is_empty()
            && self.unanchored.is_empty()
            && self.misordered.is_empty()
            && self.crowded.is_empty()
            && self.nonimportant_outdegree.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathRecord {
    pub request: Arc,
    pub path: DirectedPath,
    pub length: usize,
    pub important: ImportantSet,
    pub marked: MarkedSet,
    /// `I_P ∪ Q_P ∪ {s, t}` in path order.
    pub markers: Vec<Vertex>,
    pub segments: Vec<LadderSegment>,
    /// `length / max(1, |I_P|)`.
    pub ratio: f64,
    pub checks: PathChecks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub request: Arc,
    pub before: GraphStats,
    pub after: GraphStats,
    pub replacement: Replacement,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub schema_version: u32,
    pub terminals: Vec<Vertex>,
    pub q: usize,
    pub requests: Vec<Arc>,
    /// `R'` of the final graph.
    pub normalized_requests: Vec<Arc>,
    pub input: GraphStats,
    pub suppressed: GraphStats,
    pub output: GraphStats,
    pub rounds: Vec<RoundRecord>,
    /// Analyses of the final graph, one per normalized request.
    pub paths: Vec<PathRecord>,
    /// Largest `length / max(1, |I_P|)` over the final paths.
    pub measured_c: f64,
    /// Largest component diameter of `sym(H)` before any reduction.
    pub input_diameter: usize,
    /// Largest diameter over the connected components of `sym(H')`.
    pub diameter: usize,
    pub max_terminal_distance: usize,
    /// `8 * C * q`.
    pub diameter_bound: f64,
    pub diameter_within_bound: bool,
}

impl StructureReport {
    pub fn all_checks_hold(&self) -> bool {
        self.paths.iter().all(|p| p.checks.all_hold())
    }
}

fn analyse_path(g: &WeightedDigraph, terminals: &BTreeSet<Vertex>, request: Arc, path: DirectedPath) -> Result<PathRecord> {
    let q = terminals.len();
    let important = important_vertices(g, terminals, &path)?;
    let marked = marked_vertices(g, &path, &important)?;
    let mut markers: BTreeSet<Vertex> = important.important.iter().copied().collect();
    markers.extend(marked.marked.iter().copied());
    markers.insert(path.source());
    markers.insert(path.target());
    let mut markers: Vec<Vertex> = markers.into_iter().collect();
    markers.sort_by_key(|v| path.position(*v));
    let segments = detect_ladder_segments(g, terminals, &path, &markers);

    let pos = |v: Vertex| path.position(v).unwrap();
    let misordered = marked
        .quadruples
        .iter()
        .filter(|m| {
            let seq = [pos(m.p1), pos(m.p2), pos(m.vertex), pos(m.p3), pos(m.p4)];
            seq.windows(2).any(|w| w[0] > w[1])
        })
        .map(|m| m.vertex)
        .collect();
    let crowded = marked
        .quadruples
        .iter()
        .filter(|m| unmarked_between(&path, &important, m).len() > 2)
        .map(|m| m.vertex)
        .collect();
    let checks = PathChecks {
        important_bound: important.len() + 2 <= 2 * q,
        marked_bound: marked.len() <= 4 * important.len(),
        anchor_load: important.max_anchor_load() <= 2,
        unlabelled: important.unlabelled.clone(),
        unanchored: important.unanchored.clone(),
        misordered,
        crowded,
        nonimportant_outdegree: nonimportant_outdegree_violations(g, &path, &important),
    };
    let length = path.len();
    Ok(PathRecord {
        request,
        length,
        ratio: length as f64 / important.len().max(1) as f64,
        path,
        important,
        marked,
        markers,
        segments,
        checks,
    })
}

/// Per-request analysis of a suppressed solution: every request in `R'`
/// realized by its minimum-weight `T`-avoiding path.
pub fn analyse_paths(g: &WeightedDigraph, terminals: &BTreeSet<Vertex>) -> Result<(BTreeSet<Arc>, Vec<PathRecord>)> {
    let requests = normalized_requests_in(g, terminals);
    let mut out = Vec::new();
    for &(s, t) in &requests {
        let (path, _) = shortest_path_avoiding(g, s, t, terminals)?
            .ok_or_else(|| Error::invariant(format!("normalized request {s}->{t} has no T-avoiding path")))?;
        out.push(analyse_path(g, terminals, (s, t), path)?);
    }
    Ok((requests, out))
}

fn component_diameters(u: &UndirectedGraph, terminals: &BTreeSet<Vertex>) -> (usize, usize) {
    let mut diameter = 0;
    let mut terminal = 0;
    for v in u.vertices() {
        let dist = u.bfs_distances(v);
        if let Some(&far) = dist.values().max() {
            diameter = diameter.max(far);
        }
        if terminals.contains(&v) {
            for (w, d) in dist {
                if terminals.contains(&w) {
                    terminal = terminal.max(d);
                }
            }
        }
    }
    (diameter, terminal)
}

fn require_minimal(inst: &DsnInstance, sol: &SolutionSubgraph) -> Result<()> {
    if let Verdict::Violated((s, t)) = validate(inst, sol)? {
        return Err(Error::precondition(format!("solution misses request {s}->{t}")));
    }
    if !is_inclusion_minimal(inst, sol)? {
        return Err(Error::precondition("solution is not inclusion-minimal; minimize it first"));
    }
    Ok(())
}

/// Suppresses degree-two vertices, normalizes the requests, analyses every
/// request path and replaces long ladders, until no ladder segment longer
/// than seven remains.
pub fn reduce_length(inst: &DsnInstance, sol: &SolutionSubgraph) -> Result<(SolutionSubgraph, StructureReport)> {
    require_minimal(inst, sol)?;
    let terminals = inst.terminals().clone();
    let input = GraphStats::of(sol.graph());
    let input_diameter = component_diameters(&underlying_undirected(sol.graph()), &terminals).0;
    let mut h = sol.graph().without_isolated();
    let mut rounds = Vec::new();
    let mut suppressed = None;
    let (requests, paths) = loop {
        h = suppress_graph(&h, &terminals)?.0;
        suppressed.get_or_insert(GraphStats::of(&h));
        let (requests, paths) = analyse_paths(&h, &terminals)?;
        let target = paths.iter().find_map(|p| {
            p.segments
                .iter()
                .find(|s| !s.contains_terminal && s.length().is_some_and(|n| n > 7))
                .map(|s| (p.request, s))
        });
        let Some((request, seg)) = target else {
            break (requests, paths);
        };
        let derived = DsnInstance::new(h.clone(), requests.iter().copied())?;
        let corners = seg.corners.expect("ladder segments carry corners");
        let (next, replacement) = protrusion_replace(&derived, &SolutionSubgraph::from_graph(&h), &seg.component, corners)?;
        let replacement = replacement.ok_or_else(|| Error::invariant("long ladder was not replaced"))?;
        let next = next.graph().clone();
        if next.vertex_count() >= h.vertex_count() {
            return Err(Error::invariant("length reduction did not shrink the solution"));
        }
        rounds.push(RoundRecord {
            request,
            before: GraphStats::of(&h),
            after: GraphStats::of(&next),
            replacement,
        });
        h = next;
    };

    let q = terminals.len();
    let measured_c = paths.iter().map(|p| p.ratio).fold(0.0, f64::max);
    let (diameter, max_terminal_distance) = component_diameters(&underlying_undirected(&h), &terminals);
    let diameter_bound = 8.0 * measured_c * q as f64;
    let report = StructureReport {
        schema_version: REPORT_SCHEMA_VERSION,
        terminals: terminals.iter().copied().collect(),
        q,
        requests: inst.requests().iter().copied().collect(),
        normalized_requests: requests.into_iter().collect(),
        input,
        suppressed: suppressed.expect("loop ran"),
        output: GraphStats::of(&h),
        rounds,
        paths,
        measured_c,
        input_diameter,
        diameter,
        max_terminal_distance,
        diameter_bound,
        diameter_within_bound: diameter as f64 <= diameter_bound,
    };
    Ok((SolutionSubgraph::from_graph(&h), report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthValue {
    pub width: usize,
    /// False when the graph exceeded the exact cap and the min-fill upper
    /// bound was used.
    pub exact: bool,
}

pub fn width_of(g: &WeightedDigraph) -> Result<WidthValue> {
    let u = underlying_undirected(g);
    if u.vertex_count() <= TREEWIDTH_EXACT_CAP {
        Ok(WidthValue {
            width: treewidth_exact(&u)?.width,
            exact: true,
        })
    } else {
        Ok(WidthValue {
            width: treewidth_upper_bound(&u).width,
            exact: false,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreewidthCertificate {
    pub declared_genus: u32,
    pub q: usize,
    pub solution: WidthValue,
    pub reduced: WidthValue,
    /// `tw(sym H) / q`.
    pub ratio: f64,
    /// Set when the reduced graph has larger treewidth than the solution.
    pub treewidth_increased: bool,
    /// `tw(sym H) <= 4q`; an engineering threshold, not the asymptotic
    /// constant.
    pub within_engineering_bound: bool,
    pub report: StructureReport,
}

/// Runs the length reduction and compares treewidths before and after.
pub fn certify_treewidth_bound(inst: &DsnInstance, sol: &SolutionSubgraph, declared_genus: u32) -> Result<TreewidthCertificate> {
    let (reduced, report) = reduce_length(inst, sol)?;
    let solution = width_of(sol.graph())?;
    let reduced = width_of(reduced.graph())?;
    let q = inst.terminal_count();
    Ok(TreewidthCertificate {
        declared_genus,
        q,
        ratio: solution.width as f64 / q.max(1) as f64,
        treewidth_increased: reduced.exact && solution.exact && reduced.width > solution.width,
        within_engineering_bound: solution.width <= 4 * q,
        solution,
        reduced,
        report,
    })
}
