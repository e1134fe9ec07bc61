use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Arc, Vertex, WeightedDigraph};
use crate::error::{Error, Result};
use crate::weight::Weight;

/// A directed path `(p_0, ..., p_l)` with pairwise distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DirectedPath {
    vertices: Vec<Vertex>,
}

impl DirectedPath {
    /// Builds a path checked against `g`: consecutive vertices must be joined
    /// by an arc and no vertex may repeat.
    pub fn in_graph(g: &WeightedDigraph, vertices: Vec<Vertex>) -> Result<Self> {
        let path = Self::new(vertices)?;
        for &v in &path.vertices {
            g.check_vertex(v)?;
        }
        for (u, v) in path.arcs() {
            if !g.has_arc(u, v) {
                return Err(Error::input(format!("path uses missing arc {u}->{v}")));
            }
        }
        Ok(path)
    }

    /// Builds a path, checking only distinctness and non-emptiness.
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::input("empty path"));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::input("path repeats a vertex"));
        }
        Ok(Self { vertices })
    }

    pub fn trivial(v: Vertex) -> Self {
        Self { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn source(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn target(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    /// Number of arcs.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn internal(&self) -> &[Vertex] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.vertices.iter().copied().collect()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    /// `u <=_P v`; false when either vertex is off the path.
    pub fn precedes(&self, u: Vertex, v: Vertex) -> bool {
        matches!((self.position(u), self.position(v)), (Some(i), Some(j)) if i <= j)
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// `u[P]v`.
    pub fn subpath(&self, u: Vertex, v: Vertex) -> Result<Self> {
        match (self.position(u), self.position(v)) {
            (Some(i), Some(j)) if i <= j => Ok(Self {
                vertices: self.vertices[i..=j].to_vec(),
            }),
            _ => Err(Error::input(format!("{u} does not precede {v} on the path"))),
        }
    }

    /// `self ∘ other`; the result must again be a path.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.target() != other.source() {
            return Err(Error::input("concatenated paths do not meet"));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        Self::new(vertices)
    }

    pub fn weight_in(&self, g: &WeightedDigraph) -> Option<Weight> {
        self.arcs().map(|(u, v)| g.weight(u, v)).sum()
    }

    /// The same vertex sequence traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self { vertices }
    }
}
