use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{UndirectedGraph, Vertex};

/// An undirected edge stored with its smaller endpoint first.
pub type Edge = (Vertex, Vertex);

pub fn edge(u: Vertex, v: Vertex) -> Edge {
    (u.min(v), u.max(v))
}

/// The three labellings of the pattern, together with the intermediate
/// objects they were derived from. Labels are indices into `X`, `Y`, `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labelling {
    pub r: usize,
    /// Greedy colouring `η` with colours `0..4`.
    pub eta: BTreeMap<Vertex, usize>,
    /// The non-empty sets `A_{i,j}` in `(i, j)` order; the position of a set
    /// is its `α` label.
    pub chunks: Vec<Vec<Vertex>>,
    /// `a_i`, the number of non-empty chunks per colour class.
    pub chunks_per_colour: [usize; 4],
    pub alpha: BTreeMap<Vertex, usize>,
    pub beta: BTreeMap<Vertex, usize>,
    pub gamma: BTreeMap<Edge, usize>,
    pub x_count: usize,
    pub y_count: usize,
    pub z_count: usize,
    /// Edges of `H'`: the pattern plus a clique on every chunk.
    pub augmented_edges: Vec<Edge>,
    /// Edges of the multigraph `H''` as `(chunk, chunk, pattern edge)`.
    pub contracted_edges: Vec<(usize, usize, Edge)>,
}

fn ceil_sqrt(k: usize) -> usize {
    let mut r = (k as f64).sqrt() as usize;
    while r * r < k {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= k {
        r -= 1;
    }
    r
}

fn greedy_colour(g: &UndirectedGraph) -> BTreeMap<Vertex, usize> {
    let mut colour = BTreeMap::new();
    for v in g.vertices() {
        let used: BTreeSet<usize> = g.neighbors(v).filter_map(|w| colour.get(&w).copied()).collect();
        let c = (0..).find(|c| !used.contains(c)).unwrap();
        colour.insert(v, c);
    }
    colour
}

/// Builds `α`, `β`, `γ` for a pattern of maximum degree at most three and
/// verifies conditions (i)–(iii) and the label-count bounds.
pub fn build_labelling(pattern: &UndirectedGraph) -> Result<Labelling> {
    let max_degree = pattern.max_degree();
    if max_degree > 3 {
        return Err(Error::domain(format!(
            "pattern has maximum degree {max_degree}; the construction needs degree at most 3"
        )));
    }
    let k = pattern.vertex_count();
    let r = ceil_sqrt(k).max(1);

    let eta = greedy_colour(pattern);
    let mut chunks = Vec::new();
    let mut chunks_per_colour = [0; 4];
    for (i, count) in chunks_per_colour.iter_mut().enumerate() {
        let class: Vec<Vertex> = eta.iter().filter(|(_, c)| **c == i).map(|(v, _)| *v).collect();
        for chunk in class.chunks(r) {
            chunks.push(chunk.to_vec());
            *count += 1;
        }
    }
    let alpha: BTreeMap<Vertex, usize> = chunks
        .iter()
        .enumerate()
        .flat_map(|(l, chunk)| chunk.iter().map(move |&v| (v, l)))
        .collect();

    let mut augmented = pattern.clone();
    for chunk in &chunks {
        for (i, &u) in chunk.iter().enumerate() {
            for &v in &chunk[i + 1..] {
                augmented.add_edge(u, v);
            }
        }
    }
    let beta = greedy_colour(&augmented);

    let contracted_edges: Vec<(usize, usize, Edge)> = pattern
        .edges()
        .map(|(u, v)| (alpha[&u], alpha[&v], edge(u, v)))
        .filter(|(a, b, _)| a != b)
        .collect();
    let mut gamma = BTreeMap::new();
    for (i, &(a, b, e)) in contracted_edges.iter().enumerate() {
        let used: BTreeSet<usize> = contracted_edges[..i]
            .iter()
            .filter(|(c, d, _)| [a, b].contains(c) || [a, b].contains(d))
            .map(|(_, _, f)| gamma[f])
            .collect();
        gamma.insert(e, (0..).find(|c| !used.contains(c)).unwrap());
    }

    let lab = Labelling {
        r,
        x_count: chunks.len(),
        y_count: beta.values().max().map_or(0, |c| c + 1),
        z_count: gamma.values().max().map_or(0, |c| c + 1),
        eta,
        chunks,
        chunks_per_colour,
        alpha,
        beta,
        gamma,
        augmented_edges: augmented.edges().collect(),
        contracted_edges,
    };
    lab.verify(pattern)?;
    Ok(lab)
}

impl Labelling {
    /// Exhaustive check of conditions (i)–(iii) and of the bounds
    /// `|X| <= r + 4`, `|Y| <= r + 3`, `|Z| <= 6r - 1`.
    pub fn verify(&self, pattern: &UndirectedGraph) -> Result<()> {
        let vertices: Vec<Vertex> = pattern.vertices().collect();
        let edges: Vec<Edge> = pattern.edges().map(|(u, v)| edge(u, v)).collect();
        if edges.iter().any(|e| !self.gamma.contains_key(e)) {
            return Err(Error::invariant("some pattern edge has no γ label"));
        }
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if self.alpha[&u] == self.alpha[&v] && self.beta[&u] == self.beta[&v] {
                    return Err(Error::invariant(format!("condition (i) fails for {u} and {v}")));
                }
            }
        }
        for &(u, v) in &edges {
            if self.alpha[&u] == self.alpha[&v] || self.beta[&u] == self.beta[&v] {
                return Err(Error::invariant(format!("condition (ii) fails for edge {u}-{v}")));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            for f in &edges[i + 1..] {
                let clash = [e.0, e.1]
                    .iter()
                    .any(|u| [f.0, f.1].iter().any(|v| self.alpha[u] == self.alpha[v]));
                if clash && self.gamma[e] == self.gamma[f] {
                    return Err(Error::invariant(format!("condition (iii) fails for edges {e:?} and {f:?}")));
                }
            }
        }
        let r = self.r;
        if self.x_count > r + 4 || self.y_count > r + 3 || self.z_count > (6 * r).saturating_sub(1) {
            return Err(Error::invariant(format!(
                "label counts |X|={}, |Y|={}, |Z|={} exceed the bounds for r={r}",
                self.x_count, self.y_count, self.z_count
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::corpus::pattern_corpus;

    #[test]
    fn ceil_sqrt_values() {
        let got: Vec<usize> = [1, 2, 4, 5, 8, 9, 10, 16, 17].iter().map(|&k| ceil_sqrt(k)).collect();
        assert_eq!(got, vec![1, 2, 2, 3, 3, 3, 4, 4, 5]);
    }

    #[test]
    fn k4_labelling() {
        let lab = build_labelling(&UndirectedGraph::complete(4)).unwrap();
        assert_eq!(lab.r, 2);
        assert!(lab.chunks.iter().all(|c| c.len() == 1));
        assert_eq!(lab.x_count, 4);
        assert!(lab.y_count <= 5 && lab.z_count <= 11);
    }

    #[test]
    fn adjacent_vertices_get_distinct_alpha() {
        for (_, h) in pattern_corpus() {
            let lab = build_labelling(&h).unwrap();
            for (u, v) in h.edges() {
                assert_ne!(lab.alpha[&u], lab.alpha[&v]);
            }
        }
    }

    #[test]
    fn degree_four_is_rejected() {
        let err = build_labelling(&UndirectedGraph::complete(5)).unwrap_err();
        assert!(err.to_string().contains("degree"));
    }
}
