use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Arc, DirectedPath, Vertex, WeightedDigraph};
use crate::weight::Weight;

/// The ladder `G_{n,I}`: rails `a_1..a_n` and `b_1..b_n`, rungs alternating
/// direction, and `a_i = b_i` for every `i ∈ I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LadderSpec {
    pub n: usize,
    pub identified: BTreeSet<usize>,
}

/// Corner vertices of a materialized ladder. `a -> b` and `c -> d` are the
/// end rungs (or `a = b`, `c = d` when identified).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corners {
    pub a: Vertex,
    pub b: Vertex,
    pub c: Vertex,
    pub d: Vertex,
}

impl Corners {
    pub fn as_array(&self) -> [Vertex; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn set(&self) -> BTreeSet<Vertex> {
        self.as_array().into_iter().collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Rail {
    A,
    B,
}

type Rung = ((Rail, usize), (Rail, usize));

impl LadderSpec {
    pub fn new(n: usize, identified: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("ladder length must be positive"));
        }
        let identified: BTreeSet<usize> = identified.into_iter().collect();
        if let Some(&bad) = identified.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::input(format!("identified index {bad} is outside 1..={n}")));
        }
        Ok(Self { n, identified })
    }

    pub fn plain(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    /// Vertex ids are handed out by position: `a_i`, then `b_i` unless
    /// identified.
    pub fn a(&self, i: usize) -> Vertex {
        self.id(Rail::A, i)
    }

    pub fn b(&self, i: usize) -> Vertex {
        self.id(Rail::B, i)
    }

    fn id(&self, rail: Rail, i: usize) -> Vertex {
        assert!((1..=self.n).contains(&i), "ladder index {i} out of range");
        let before = 2 * (i - 1) - self.identified.range(..i).count();
        match rail {
            Rail::B if !self.identified.contains(&i) => (before + 1) as Vertex,
            _ => before as Vertex,
        }
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n - self.identified.len()
    }

    pub fn corners(&self) -> Corners {
        let n = self.n;
        if n.is_multiple_of(2) {
            Corners { a: self.a(1), b: self.b(1), c: self.b(n), d: self.a(n) }
        } else {
            Corners { a: self.a(1), b: self.b(1), c: self.a(n), d: self.b(n) }
        }
    }

    fn families(&self) -> [Vec<Rung>; 6] {
        let n = self.n;
        let odd = |j: &usize| j % 2 == 1;
        let even = |j: &usize| j.is_multiple_of(2);
        [
            (1..=n).filter(odd).map(|j| ((Rail::A, j), (Rail::B, j))).collect(),
            (1..=n).filter(even).map(|j| ((Rail::B, j), (Rail::A, j))).collect(),
            (1..=n).filter(even).map(|j| ((Rail::A, j), (Rail::A, j - 1))).collect(),
            (1..n).filter(even).map(|j| ((Rail::A, j), (Rail::A, j + 1))).collect(),
            (3..=n).filter(odd).map(|j| ((Rail::B, j), (Rail::B, j - 1))).collect(),
            (1..n).filter(odd).map(|j| ((Rail::B, j), (Rail::B, j + 1))).collect(),
        ]
    }

    fn materialize(&self, family: &[Rung]) -> Vec<Arc> {
        family
            .iter()
            .map(|&((r, i), (s, j))| (self.id(r, i), self.id(s, j)))
            .filter(|(u, v)| u != v)
            .collect()
    }

    pub fn arc_set(&self) -> BTreeSet<Arc> {
        self.families().iter().flat_map(|f| self.materialize(f)).collect()
    }
}

/// Materializes `G_{n,I}` with unit weights.
pub fn make_ladder(spec: &LadderSpec) -> WeightedDigraph {
    WeightedDigraph::from_unit_arcs(spec.vertex_count(), spec.arc_set())
        .expect("ladder arcs are simple")
}

fn walk(arcs: &BTreeSet<Arc>, start: Vertex) -> Result<DirectedPath> {
    let next: BTreeMap<Vertex, Vertex> = arcs.iter().copied().collect();
    if next.len() != arcs.len() {
        return Err(Error::invariant("ladder path family branches"));
    }
    let mut seq = vec![start];
    let mut cur = start;
    while let Some(&v) = next.get(&cur) {
        seq.push(v);
        cur = v;
    }
    DirectedPath::new(seq)
}

/// The two paths whose union is the ladder: `P1` takes the rungs plus the
/// rail arcs `a_{2i} a_{2i+1}` and `b_{2i-1} b_{2i}`, `P2` the rungs plus
/// `a_{2i} a_{2i-1}` and `b_{2i+1} b_{2i}`.
pub fn ladder_two_path_decomposition(
    g: &WeightedDigraph,
    spec: &LadderSpec,
) -> Result<(DirectedPath, DirectedPath)> {
    if g.arc_set() != spec.arc_set() || g.vertex_count() != spec.vertex_count() {
        return Err(Error::precondition("graph is not the materialized ladder"));
    }
    let f = spec.families();
    let rungs: BTreeSet<Arc> = spec.materialize(&f[0]).into_iter().chain(spec.materialize(&f[1])).collect();
    let mut p1 = rungs.clone();
    p1.extend(spec.materialize(&f[3]));
    p1.extend(spec.materialize(&f[5]));
    let mut p2 = rungs;
    p2.extend(spec.materialize(&f[2]));
    p2.extend(spec.materialize(&f[4]));
    let corners = spec.corners();
    let first = walk(&p1, corners.a)?;
    let second = walk(&p2, corners.c)?;
    DirectedPath::in_graph(g, first.vertices().to_vec())?;
    DirectedPath::in_graph(g, second.vertices().to_vec())?;
    Ok((first, second))
}

/// Unit-weight copy of a ladder with every id shifted by `offset`.
pub fn ladder_arcs_with_offset(spec: &LadderSpec, offset: Vertex) -> Vec<(Vertex, Vertex, Weight)> {
    spec.arc_set()
        .into_iter()
        .map(|(u, v)| (u + offset, v + offset, Weight::ONE))
        .collect()
}
