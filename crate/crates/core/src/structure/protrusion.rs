use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::dsn::{is_inclusion_minimal, validate, DsnInstance, SolutionSubgraph, Verdict};
use crate::error::{Error, Result};
use crate::graph::{reachable_avoiding, Direction, Vertex, WeightedDigraph};
use crate::weight::Weight;

use super::ladder::{Corners, LadderSpec};
use super::recognize::is_ladder_subdivision;

/// Most fresh vertices a replacement may introduce.
pub const REPLACEMENT_VERTEX_CAP: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replacement {
    pub corners: Corners,
    pub old_length: usize,
    pub new_length: usize,
    pub removed: BTreeSet<Vertex>,
    pub added: BTreeSet<Vertex>,
}

fn neighbourhood(g: &WeightedDigraph, set: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    set.iter()
        .flat_map(|&v| g.neighbors(v))
        .filter(|w| !set.contains(w))
        .collect()
}

fn terminal_reachability(g: &WeightedDigraph, terminals: &BTreeSet<Vertex>) -> BTreeMap<Vertex, BTreeSet<Vertex>> {
    let none = BTreeSet::new();
    terminals
        .iter()
        .map(|&t| {
            let reach = if g.contains_vertex(t) {
                reachable_avoiding(g, t, &none, Direction::Forward)
                    .intersection(terminals)
                    .copied()
                    .collect()
            } else {
                BTreeSet::from([t])
            };
            (t, reach)
        })
        .collect()
}

/// Replaces the ladder `sol[F ∪ {a, b, c, d}]` by a fresh ladder of length
/// six or seven with the same parity and the same corners. New arcs have
/// unit weight. Ladders of length at most seven are left alone.
///
/// `inst.host()` is the graph the solution lives in; minimality is checked
/// against `inst.requests()` before and after.
pub fn protrusion_replace(
    inst: &DsnInstance,
    sol: &SolutionSubgraph,
    f: &BTreeSet<Vertex>,
    corners: Corners,
) -> Result<(SolutionSubgraph, Option<Replacement>)> {
    let h = sol.graph();
    let Corners { a, b, c, d } = corners;
    let boundary = corners.set();
    if let Some(x) = f.iter().find(|v| inst.terminals().contains(v)) {
        return Err(Error::precondition(format!("F contains terminal {x}")));
    }
    if let Some(x) = f.iter().chain(&boundary).find(|v| !h.contains_vertex(**v)) {
        return Err(Error::precondition(format!("vertex {x} is not in the solution")));
    }
    if f.is_empty() || f.iter().any(|v| boundary.contains(v)) {
        return Err(Error::precondition("F must be non-empty and disjoint from the corners"));
    }
    let mut rest = h.clone();
    for v in &boundary {
        rest.remove_vertex(*v);
    }
    let start = *f.iter().next().unwrap();
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in rest.neighbors(v) {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    if &seen != f {
        return Err(Error::precondition("F is not a connected component of the solution minus the corners"));
    }
    if !(a == b || h.has_arc(a, b)) || !(c == d || h.has_arc(c, d)) {
        return Err(Error::precondition("corner rungs ab and cd must be present"));
    }
    let mut keep = f.clone();
    keep.extend(boundary.iter().copied());
    let verdict = is_ladder_subdivision(&h.induced(&keep), a, b, c, d);
    let Some(n) = verdict.length() else {
        return Err(Error::precondition(format!("F with its corners is not a ladder: {verdict:?}")));
    };
    if n <= 7 {
        return Ok((sol.clone(), None));
    }
    match validate(inst, sol)? {
        Verdict::Valid => {}
        Verdict::Violated((s, t)) => {
            return Err(Error::precondition(format!("solution misses request {s}->{t}")));
        }
    }

    let new_length = if n % 2 == 0 { 6 } else { 7 };
    let mut identified = Vec::new();
    if a == b {
        identified.push(1);
    }
    if c == d {
        identified.push(new_length);
    }
    let spec = LadderSpec::new(new_length, identified)?;
    let sc = spec.corners();
    let mut out = h.clone();
    for v in f {
        out.remove_vertex(*v);
    }
    let mut rename: BTreeMap<Vertex, Vertex> = BTreeMap::from([(sc.a, a), (sc.b, b), (sc.c, c), (sc.d, d)]);
    let mut added = BTreeSet::new();
    let mut next = out.fresh_vertex().max(h.fresh_vertex());
    for v in 0..spec.vertex_count() as Vertex {
        rename.entry(v).or_insert_with(|| {
            let id = next;
            next += 1;
            added.insert(id);
            id
        });
    }
    for &v in &added {
        out.add_vertex(v);
    }
    for (u, v) in spec.arc_set() {
        let (x, y) = (rename[&u], rename[&v]);
        if !out.has_arc(x, y) {
            out.add_arc(x, y, Weight::ONE)?;
        }
    }
    let result = SolutionSubgraph::from_graph(&out);

    // H' - F' = H - F
    let mut left = out.clone();
    for v in &added {
        left.remove_vertex(*v);
    }
    let mut right = h.clone();
    for v in f {
        right.remove_vertex(*v);
    }
    if left.without_isolated() != right.without_isolated() {
        return Err(Error::invariant("replacement changed the graph outside the ladder"));
    }
    if neighbourhood(&out, &added) != boundary {
        return Err(Error::invariant("replacement interior has neighbours beyond the corners"));
    }
    if added.len() > REPLACEMENT_VERTEX_CAP {
        return Err(Error::invariant("replacement interior is too large"));
    }
    let after = inst.with_host(out.clone())?;
    if !validate(&after, &result)?.is_valid() || !is_inclusion_minimal(&after, &result)? {
        return Err(Error::invariant("replacement is not an inclusion-minimal solution"));
    }
    if terminal_reachability(h, inst.terminals()) != terminal_reachability(&out, inst.terminals()) {
        return Err(Error::invariant("replacement changed terminal reachability"));
    }
    Ok((
        result,
        Some(Replacement {
            corners,
            old_length: n,
            new_length,
            removed: f.clone(),
            added,
        }),
    ))
}
