use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::graph::{reaches, Arc, UndirectedGraph, Vertex, WeightedDigraph};
use crate::weight::Weight;

use super::ladder::{LadderSpec, Corners};

/// Why a graph was not accepted as a ladder subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "failure", content = "detail")]
pub enum LadderFailure {
    UnknownCorner(Vertex),
    /// `a != b` and `ab` is missing, or `a` and `b` have extra neighbours.
    TopRung,
    /// Same for `c`, `d`.
    BottomRung,
    NoPathAToD,
    NoPathCToB,
    /// Some arc other than `ab`, `cd` can be dropped while keeping both paths.
    NotMinimal(Arc),
    /// The hypotheses hold at the top level but the peeling procedure got
    /// stuck.
    Structure(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum LadderVerdict {
    /// `length` is the number of rungs of the ladder being subdivided.
    Ladder { peeled: usize, length: usize },
    Rejected { reason: LadderFailure },
}

impl LadderVerdict {
    pub fn is_ladder(&self) -> bool {
        matches!(self, LadderVerdict::Ladder { .. })
    }

    pub fn length(&self) -> Option<usize> {
        match self {
            LadderVerdict::Ladder { length, .. } => Some(*length),
            LadderVerdict::Rejected { .. } => None,
        }
    }
}

fn rung_ok(k: &WeightedDigraph, x: Vertex, y: Vertex) -> bool {
    if x == y {
        return true;
    }
    k.has_arc(x, y)
        && k.in_neighbors(y).eq([x])
        && k.out_neighbors(x).eq([y])
}

fn hypotheses(k: &WeightedDigraph, [a, b, c, d]: [Vertex; 4]) -> Result<(), LadderFailure> {
    for v in [a, b, c, d] {
        if !k.contains_vertex(v) {
            return Err(LadderFailure::UnknownCorner(v));
        }
    }
    if !rung_ok(k, a, b) {
        return Err(LadderFailure::TopRung);
    }
    if !rung_ok(k, c, d) {
        return Err(LadderFailure::BottomRung);
    }
    let none = BTreeSet::new();
    let both = |g: &WeightedDigraph| {
        if !reaches(g, a, d, &none).unwrap_or(false) {
            Err(LadderFailure::NoPathAToD)
        } else if !reaches(g, c, b, &none).unwrap_or(false) {
            Err(LadderFailure::NoPathCToB)
        } else {
            Ok(())
        }
    };
    both(k)?;
    for (u, v, _) in k.arcs() {
        if (u, v) == (a, b) || (u, v) == (c, d) {
            continue;
        }
        let mut h = k.clone();
        h.remove_arc(u, v);
        if both(&h).is_ok() {
            return Err(LadderFailure::NotMinimal((u, v)));
        }
    }
    Ok(())
}

/// Replaces every non-corner vertex of total degree at most two by an arc.
fn suppress(k: &mut WeightedDigraph, corners: &BTreeSet<Vertex>) -> Result<(), LadderFailure> {
    loop {
        let Some(v) = k
            .vertices()
            .find(|v| !corners.contains(v) && k.total_degree(*v) <= 2)
        else {
            return Ok(());
        };
        let ins: Vec<Vertex> = k.in_neighbors(v).collect();
        let outs: Vec<Vertex> = k.out_neighbors(v).collect();
        let (&[u], &[w]) = (ins.as_slice(), outs.as_slice()) else {
            return Err(LadderFailure::Structure(format!("vertex {v} is a source or sink")));
        };
        if u == w || k.has_arc(u, w) {
            return Err(LadderFailure::Structure(format!("suppressing {v} creates a loop or parallel arc")));
        }
        k.remove_vertex(v);
        k.add_arc(u, w, Weight::ONE).expect("checked simple");
    }
}

/// Suppressed arc sets of every ladder with at most four vertices, keyed by
/// vertex count, with corners at the ids they receive in the spec.
type Seed = (WeightedDigraph, Corners, usize);

fn seeds() -> &'static BTreeMap<usize, Vec<Seed>> {
    static SEEDS: OnceLock<BTreeMap<usize, Vec<Seed>>> = OnceLock::new();
    SEEDS.get_or_init(|| {
        let mut out: BTreeMap<usize, Vec<Seed>> = BTreeMap::new();
        for n in 1..=4usize {
            for mask in 0..(1u32 << n) {
                let spec = LadderSpec::new(n, (1..=n).filter(|i| mask & (1 << (i - 1)) != 0)).unwrap();
                let corners = spec.corners();
                let mut g = WeightedDigraph::from_unit_arcs(spec.vertex_count(), spec.arc_set()).unwrap();
                if suppress(&mut g, &corners.set()).is_err() {
                    continue;
                }
                out.entry(g.vertex_count()).or_default().push((g, corners, n));
            }
        }
        out
    })
}

fn permutations(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn matches_seed(k: &WeightedDigraph, corners: [Vertex; 4]) -> Option<usize> {
    let kv: Vec<Vertex> = k.vertices().collect();
    let karcs = k.arc_set();
    let candidates = seeds().get(&kv.len())?;
    for (seed, sc, n) in candidates {
        if seed.arc_count() != karcs.len() {
            continue;
        }
        let sv: Vec<Vertex> = seed.vertices().collect();
        for perm in permutations(&kv) {
            let map: BTreeMap<Vertex, Vertex> = sv.iter().copied().zip(perm).collect();
            if sc.as_array().iter().zip(corners).any(|(s, c)| map[s] != c) {
                continue;
            }
            if seed.arc_set().iter().all(|(u, v)| karcs.contains(&(map[u], map[v]))) {
                return Some(*n);
            }
        }
    }
    None
}

/// Decides whether `k` is a subdivision of a ladder with corners `a, b, c, d`
/// by the inductive procedure: suppress degree-two vertices, peel the top
/// rung, and recurse until at most four vertices remain.
pub fn is_ladder_subdivision(k: &WeightedDigraph, a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> LadderVerdict {
    if let Err(reason) = hypotheses(k, [a, b, c, d]) {
        return LadderVerdict::Rejected { reason };
    }
    let mut g = k.clone();
    let (mut a, mut b) = (a, b);
    let mut peeled = 0;
    loop {
        let corners: BTreeSet<Vertex> = [a, b, c, d].into();
        if let Err(reason) = suppress(&mut g, &corners) {
            return LadderVerdict::Rejected { reason };
        }
        if g.vertex_count() <= 4 {
            return if let Some(base) = matches_seed(&g, [a, b, c, d]) {
                LadderVerdict::Ladder { peeled, length: base + peeled }
            } else {
                LadderVerdict::Rejected {
                    reason: LadderFailure::Structure("base graph is not a ladder".into()),
                }
            };
        }
        if [a, b].iter().any(|x| *x == c || *x == d) {
            return LadderVerdict::Rejected {
                reason: LadderFailure::Structure("top and bottom corners meet".into()),
            };
        }
        let ins: Vec<Vertex> = g.in_neighbors(a).collect();
        let outs: Vec<Vertex> = g.out_neighbors(b).collect();
        let top_clean = if a == b {
            g.total_degree(a) == 2
        } else {
            g.total_degree(a) == 2 && g.total_degree(b) == 2
        };
        let (&[abar], &[bbar], true) = (ins.as_slice(), outs.as_slice(), top_clean) else {
            return LadderVerdict::Rejected {
                reason: LadderFailure::Structure(format!("top rung {a},{b} has extra neighbours")),
            };
        };
        if [abar, bbar].iter().any(|x| *x == a || *x == b) {
            return LadderVerdict::Rejected {
                reason: LadderFailure::Structure("top rung is isolated".into()),
            };
        }
        g.remove_vertex(a);
        g.remove_vertex(b);
        (a, b) = (bbar, abar);
        peeled += 1;
        if let Err(reason) = hypotheses(&g, [a, b, c, d]) {
            return LadderVerdict::Rejected {
                reason: LadderFailure::Structure(format!("after peeling {peeled} rungs: {reason:?}")),
            };
        }
    }
}

/// Finds a Hamiltonian cycle whose remaining edges are pairwise
/// non-crossing chords; for a 2-connected graph this is outerplanarity.
fn has_outer_cycle(u: &UndirectedGraph) -> bool {
    let vs: Vec<Vertex> = u.vertices().collect();
    let n = vs.len();
    if n < 3 {
        return false;
    }
    let start = vs[0];
    let mut path = vec![start];
    let mut used: BTreeSet<Vertex> = [start].into();
    fn extend(u: &UndirectedGraph, n: usize, path: &mut Vec<Vertex>, used: &mut BTreeSet<Vertex>) -> bool {
        let last = *path.last().unwrap();
        if path.len() == n {
            return u.has_edge(last, path[0]) && chords_nest(u, path);
        }
        for w in u.neighbors(last).collect::<Vec<_>>() {
            if used.contains(&w) {
                continue;
            }
            used.insert(w);
            path.push(w);
            if extend(u, n, path, used) {
                return true;
            }
            path.pop();
            used.remove(&w);
        }
        false
    }
    extend(u, n, &mut path, &mut used)
}

fn chords_nest(u: &UndirectedGraph, cycle: &[Vertex]) -> bool {
    let n = cycle.len();
    let pos: BTreeMap<Vertex, usize> = cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let chords: Vec<(usize, usize)> = u
        .edges()
        .map(|(x, y)| {
            let (i, j) = (pos[&x], pos[&y]);
            (i.min(j), i.max(j))
        })
        .filter(|&(i, j)| j - i != 1 && !(i == 0 && j == n - 1))
        .collect();
    chords.iter().enumerate().all(|(k, &(i, j))| {
        chords[k + 1..]
            .iter()
            .all(|&(p, q)| !((i < p && p < j && j < q) || (p < i && i < q && q < j)))
    })
}

/// Whether `u` is the underlying undirected graph of a plain ladder with
/// corners `a, b, c, d`: 2-connected, outerplanar, the corners distinct of
/// degree two with edges `ab` and `cd`, every other vertex of degree three.
pub fn is_ladder_undirected(u: &UndirectedGraph, a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> bool {
    let corners: BTreeSet<Vertex> = [a, b, c, d].into();
    if corners.len() != 4 || corners.iter().any(|v| !u.contains_vertex(*v)) {
        return false;
    }
    if !u.has_edge(a, b) || !u.has_edge(c, d) {
        return false;
    }
    let degrees_ok = u
        .vertices()
        .all(|v| u.degree(v) == if corners.contains(&v) { 2 } else { 3 });
    degrees_ok && u.is_biconnected() && has_outer_cycle(u)
}
