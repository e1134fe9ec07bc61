use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::Vertex;
use crate::error::{Error, Result};

/// A simple undirected graph without weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl UndirectedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for v in 0..n as Vertex {
            g.add_vertex(v);
        }
        g
    }

    pub fn from_edges<I: IntoIterator<Item = (Vertex, Vertex)>>(n: usize, edges: I) -> Self {
        let mut g = Self::with_vertices(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(k: usize) -> Self {
        let k = k as Vertex;
        Self::from_edges(k as usize, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))))
    }

    pub fn path(k: usize) -> Self {
        Self::from_edges(k, (1..k as Vertex).map(|v| (v - 1, v)))
    }

    pub fn cycle(k: usize) -> Self {
        let mut g = Self::path(k);
        if k >= 3 {
            g.add_edge(k as Vertex - 1, 0);
        }
        g
    }

    /// `w x h` grid; vertex `(x, y)` has id `y * w + x`.
    pub fn grid(w: usize, h: usize) -> Self {
        let id = |x: usize, y: usize| (y * w + x) as Vertex;
        let mut g = Self::with_vertices(w * h);
        for y in 0..h {
            for x in 0..w {
                if x + 1 < w {
                    g.add_edge(id(x, y), id(x + 1, y));
                }
                if y + 1 < h {
                    g.add_edge(id(x, y), id(x, y + 1));
                }
            }
        }
        g
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    /// Adds `{u, v}`, creating endpoints as needed. Loops are ignored.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        self.add_vertex(u);
        self.add_vertex(v);
        if u != v {
            self.adj.get_mut(&u).unwrap().insert(v);
            self.adj.get_mut(&v).unwrap().insert(u);
        }
    }

    pub fn remove_vertex(&mut self, v: Vertex) {
        if let Some(ns) = self.adj.remove(&v) {
            for u in ns {
                self.adj.get_mut(&u).unwrap().remove(&v);
            }
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flat_map(|n| n.iter().copied())
    }

    pub fn neighbor_set(&self, v: Vertex) -> &BTreeSet<Vertex> {
        static EMPTY: BTreeSet<Vertex> = BTreeSet::new();
        self.adj.get(&v).unwrap_or(&EMPTY)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Self {
        let mut g = Self::new();
        for (&u, ns) in &self.adj {
            if keep.contains(&u) {
                g.add_vertex(u);
                for &v in ns.iter().filter(|v| keep.contains(v)) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Hop distances from `s` to every reachable vertex.
    pub fn bfs_distances(&self, s: Vertex) -> BTreeMap<Vertex, usize> {
        let mut dist = BTreeMap::from([(s, 0)]);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            for v in self.neighbors(u) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(v) {
                    e.insert(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.insert(v) {
                let comp: Vec<Vertex> = self.bfs_distances(v).into_keys().collect();
                seen.extend(comp.iter().copied());
                out.push(comp);
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Largest hop distance over all vertex pairs.
    ///
    /// A disconnected graph is a domain error naming one vertex from each of
    /// two different components.
    pub fn diameter(&self) -> Result<usize> {
        let comps = self.components();
        if comps.len() > 1 {
            return Err(Error::domain(format!(
                "graph is disconnected: component containing {} and component containing {}",
                comps[0][0], comps[1][0]
            )));
        }
        Ok(self
            .vertices()
            .map(|v| self.bfs_distances(v).into_values().max().unwrap_or(0))
            .max()
            .unwrap_or(0))
    }

    /// 2-connected: connected, at least three vertices, no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        let n = self.vertex_count();
        if n < 3 || !self.is_connected() {
            return false;
        }
        self.vertices().all(|v| {
            let mut rest = self.clone();
            rest.remove_vertex(v);
            rest.is_connected()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diameter_basics() {
        assert_eq!(UndirectedGraph::with_vertices(1).diameter().unwrap(), 0);
        assert_eq!(UndirectedGraph::path(5).diameter().unwrap(), 4);
        assert_eq!(UndirectedGraph::grid(4, 4).diameter().unwrap(), 6);
        let split = UndirectedGraph::from_edges(4, [(0, 1), (2, 3)]);
        match split.diameter() {
            Err(Error::Domain(msg)) => assert!(msg.contains('0') && msg.contains('2')),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn biconnectivity() {
        assert!(UndirectedGraph::cycle(4).is_biconnected());
        assert!(!UndirectedGraph::path(4).is_biconnected());
        assert!(UndirectedGraph::complete(4).is_biconnected());
    }
}
