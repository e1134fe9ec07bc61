use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::{DirectedPath, Vertex, WeightedDigraph};

use super::ladder::Corners;
use super::recognize::{is_ladder_subdivision, LadderVerdict};

/// Which boundary the ladder was found behind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryShape {
    /// Two consecutive path vertices on each side, e.g.
    /// `{p_{i+1}, p_{i+2}, p_{j-2}, p_{j-1}}`.
    Four,
    /// A single vertex on one side (`a = b` or `c = d`) and a pair on the other.
    Three,
    /// `a = b` and `c = d`.
    Two,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderSegment {
    /// Path indices of the two consecutive markers.
    pub i: usize,
    pub j: usize,
    pub boundary: Vec<Vertex>,
    /// The component `C` behind the boundary.
    pub component: BTreeSet<Vertex>,
    pub corners: Option<Corners>,
    pub shape: Option<BoundaryShape>,
    pub verdict: LadderVerdict,
    pub contains_terminal: bool,
    /// Vertices of `C` with a neighbour outside `C ∪ boundary`; always empty
    /// for a genuine component, kept as an explicit check.
    pub leaking: Vec<Vertex>,
}

impl LadderSegment {
    pub fn is_ladder(&self) -> bool {
        self.verdict.is_ladder()
    }

    pub fn length(&self) -> Option<usize> {
        self.verdict.length()
    }
}

fn component_without(g: &WeightedDigraph, removed: &BTreeSet<Vertex>, start: Vertex) -> BTreeSet<Vertex> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if !removed.contains(&w) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

fn examine(
    g: &WeightedDigraph,
    boundary: &BTreeSet<Vertex>,
    seed: Vertex,
    options: &[Corners],
) -> (BTreeSet<Vertex>, Option<Corners>, LadderVerdict, Vec<Vertex>) {
    let component = component_without(g, boundary, seed);
    let mut keep = component.clone();
    keep.extend(boundary.iter().copied());
    let leaking = component
        .iter()
        .copied()
        .filter(|&v| g.neighbors(v).iter().any(|w| !keep.contains(w)))
        .collect();
    let k = g.induced(&keep);
    let mut last = None;
    for &c in options {
        let v = is_ladder_subdivision(&k, c.a, c.b, c.c, c.d);
        if v.is_ladder() {
            return (component, Some(c), v, leaking);
        }
        last = Some(v);
    }
    (component, None, last.expect("at least one corner option"), leaking)
}

fn side_options(near: &[Vertex], far: &[Vertex]) -> Vec<Corners> {
    let orders = |x: &[Vertex]| match x {
        [v] => vec![(*v, *v)],
        _ => vec![(x[0], x[1]), (x[1], x[0])],
    };
    let mut out = Vec::new();
    for (x, y) in [(near, far), (far, near)] {
        for &(a, b) in &orders(x) {
            for &(c, d) in &orders(y) {
                out.push(Corners { a, b, c, d });
            }
        }
    }
    out
}

/// Looks between consecutive markers at distance at least five along `P`
/// for a ladder between them. The nominal boundary is
/// `{p_{i+1}, p_{i+2}, p_{j-2}, p_{j-1}}`; when that is rejected, boundaries
/// with a collapsed side or shifted one step inward are tried as well.
pub fn detect_ladder_segments(
    g: &WeightedDigraph,
    terminals: &BTreeSet<Vertex>,
    p: &DirectedPath,
    markers: &[Vertex],
) -> Vec<LadderSegment> {
    let idx: Vec<usize> = markers.iter().filter_map(|m| p.position(*m)).collect();
    let at = |k: usize| p.vertices()[k];
    let mut out = Vec::new();
    for w in idx.windows(2) {
        let (i, j) = (w[0], w[1]);
        if j < i + 5 {
            continue;
        }
        let mut candidates = Vec::new();
        for (lo, hi) in [(i + 1, j - 1), (i + 2, j - 1), (i + 1, j - 2), (i + 2, j - 2)] {
            for (near_len, far_len) in [(2, 2), (1, 1), (1, 2), (2, 1)] {
                let near_end = lo + near_len - 1;
                let far_start = hi + 1 - far_len;
                if far_start < near_end + 2 {
                    continue;
                }
                let near: Vec<Vertex> = (lo..=near_end).map(at).collect();
                let far: Vec<Vertex> = (far_start..=hi).map(at).collect();
                let shape = match near_len + far_len {
                    4 => BoundaryShape::Four,
                    3 => BoundaryShape::Three,
                    _ => BoundaryShape::Two,
                };
                candidates.push((near, far, shape, at(near_end + 1)));
            }
        }
        let mut first = None;
        let mut found = None;
        for (near, far, shape, seed) in candidates {
            let mut boundary_list = near.clone();
            boundary_list.extend(far.iter().copied());
            let boundary: BTreeSet<Vertex> = boundary_list.iter().copied().collect();
            let options = side_options(&near, &far);
            let (component, corners, verdict, leaking) = examine(g, &boundary, seed, &options);
            let seg = LadderSegment {
                i,
                j,
                boundary: boundary_list,
                contains_terminal: component.iter().any(|v| terminals.contains(v)),
                component,
                corners,
                shape: corners.map(|_| shape),
                verdict,
                leaking,
            };
            if seg.is_ladder() {
                found = Some(seg);
                break;
            }
            first.get_or_insert(seg);
        }
        out.push(found.or(first).expect("at least one candidate window"));
    }
    out
}
