use std::collections::{BTreeMap, BTreeSet};

use super::{Arc, Vertex};
use crate::error::{Error, Result};
use crate::weight::Weight;

/// A simple directed graph with strictly positive exact arc weights.
///
/// No self-loops, no parallel arcs. Vertex ids need not be contiguous once
/// vertices are removed, but every constructor hands out dense ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedDigraph {
    vertices: BTreeSet<Vertex>,
    out: BTreeMap<Vertex, BTreeMap<Vertex, Weight>>,
    inc: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl WeightedDigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with no arcs.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for v in 0..n as Vertex {
            g.add_vertex(v);
        }
        g
    }

    /// Graph on `0..n` with the given arcs.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Weight)>,
    {
        let mut g = Self::with_vertices(n);
        for (u, v, w) in arcs {
            g.add_arc(u, v, w)?;
        }
        Ok(g)
    }

    /// Graph on `0..n` with unit-weight arcs.
    pub fn from_unit_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = Arc>,
    {
        Self::from_arcs(n, arcs.into_iter().map(|(u, v)| (u, v, Weight::ONE)))
    }

    pub fn add_vertex(&mut self, v: Vertex) -> bool {
        self.out.entry(v).or_default();
        self.inc.entry(v).or_default();
        self.vertices.insert(v)
    }

    /// Smallest id not in use.
    pub fn fresh_vertex(&self) -> Vertex {
        self.vertices.iter().next_back().map_or(0, |v| v + 1)
    }

    pub fn add_arc(&mut self, u: Vertex, v: Vertex, w: Weight) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::input(format!("self-loop at {u}")));
        }
        if !w.is_positive() {
            return Err(Error::input(format!("non-positive weight {w} on arc {u}->{v}")));
        }
        if self.has_arc(u, v) {
            return Err(Error::input(format!("parallel arc {u}->{v}")));
        }
        self.out.get_mut(&u).unwrap().insert(v, w);
        self.inc.get_mut(&v).unwrap().insert(u);
        Ok(())
    }

    pub fn remove_arc(&mut self, u: Vertex, v: Vertex) -> Option<Weight> {
        let w = self.out.get_mut(&u)?.remove(&v)?;
        self.inc.get_mut(&v).unwrap().remove(&u);
        Some(w)
    }

    /// Removes `v` together with all incident arcs.
    pub fn remove_vertex(&mut self, v: Vertex) -> bool {
        if !self.vertices.remove(&v) {
            return false;
        }
        for head in self.out.remove(&v).unwrap_or_default().into_keys() {
            self.inc.get_mut(&head).unwrap().remove(&v);
        }
        for tail in self.inc.remove(&v).unwrap_or_default() {
            self.out.get_mut(&tail).unwrap().remove(&v);
        }
        true
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.vertices.contains(&v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_set(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.values().map(BTreeMap::len).sum()
    }

    /// Arcs in ascending `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex, Weight)> + '_ {
        self.out
            .iter()
            .flat_map(|(&u, heads)| heads.iter().map(move |(&v, &w)| (u, v, w)))
    }

    pub fn arc_set(&self) -> BTreeSet<Arc> {
        self.arcs().map(|(u, v, _)| (u, v)).collect()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.out.get(&u).is_some_and(|h| h.contains_key(&v))
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<Weight> {
        self.out.get(&u).and_then(|h| h.get(&v)).copied()
    }

    pub fn out_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out.get(&v).into_iter().flat_map(|h| h.keys().copied())
    }

    pub fn out_arcs(&self, v: Vertex) -> impl Iterator<Item = (Vertex, Weight)> + '_ {
        self.out.get(&v).into_iter().flat_map(|h| h.iter().map(|(&x, &w)| (x, w)))
    }

    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.inc.get(&v).into_iter().flat_map(|t| t.iter().copied())
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out.get(&v).map_or(0, BTreeMap::len)
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.inc.get(&v).map_or(0, BTreeSet::len)
    }

    /// In-degree plus out-degree.
    pub fn total_degree(&self, v: Vertex) -> usize {
        self.in_degree(v) + self.out_degree(v)
    }

    /// Distinct vertices adjacent to `v` in either direction.
    pub fn neighbors(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.out_neighbors(v).chain(self.in_neighbors(v)).collect()
    }

    pub fn total_weight(&self) -> Weight {
        self.arcs().map(|(_, _, w)| w).sum()
    }

    /// Every arc reversed, weights kept.
    pub fn reversed(&self) -> Self {
        let mut g = Self::new();
        for v in self.vertices() {
            g.add_vertex(v);
        }
        for (u, v, w) in self.arcs() {
            g.add_arc(v, u, w).expect("reversal of a simple digraph is simple");
        }
        g
    }

    /// Subgraph induced by `keep`.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Self {
        let mut g = Self::new();
        for &v in keep.iter().filter(|v| self.contains_vertex(**v)) {
            g.add_vertex(v);
        }
        for (u, v, w) in self.arcs() {
            if keep.contains(&u) && keep.contains(&v) {
                g.add_arc(u, v, w).unwrap();
            }
        }
        g
    }

    /// Subgraph formed by the given arcs; vertex set is their endpoints.
    pub fn arc_subgraph<'a, I>(&self, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Arc>,
    {
        let mut g = Self::new();
        for &(u, v) in arcs {
            let w = self
                .weight(u, v)
                .ok_or_else(|| Error::input(format!("arc {u}->{v} not in graph")))?;
            g.add_vertex(u);
            g.add_vertex(v);
            g.add_arc(u, v, w)?;
        }
        Ok(g)
    }

    /// Drops vertices with no incident arcs.
    pub fn without_isolated(&self) -> Self {
        let keep: BTreeSet<Vertex> = self
            .vertices()
            .filter(|&v| self.total_degree(v) > 0)
            .collect();
        self.induced(&keep)
    }

    pub fn all_weights_integer(&self) -> bool {
        self.arcs().all(|(_, _, w)| w.is_integer())
    }
}
