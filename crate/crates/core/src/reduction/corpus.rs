use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::generate::rng;
use crate::graph::{UndirectedGraph, Vertex};

use super::psi::PsiInstance;

/// Largest host the corpus generator produces.
pub const CORPUS_HOST_CAP: usize = 12;

/// The shipped 3-regular patterns: `K4`, `K_{3,3}`, the triangular prism,
/// the cube and the Wagner graph.
pub fn pattern_corpus() -> Vec<(&'static str, UndirectedGraph)> {
    let k33 = UndirectedGraph::from_edges(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v))));
    let prism = UndirectedGraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]);
    let cube = UndirectedGraph::from_edges(
        8,
        (0..8u32).flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b)))).filter(|(u, v)| u < v),
    );
    let mut wagner = UndirectedGraph::cycle(8);
    for i in 0..4 {
        wagner.add_edge(i, i + 4);
    }
    vec![
        ("k4", UndirectedGraph::complete(4)),
        ("k33", k33),
        ("prism", prism),
        ("cube", cube),
        ("wagner", wagner),
    ]
}

/// How a corpus host was generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HostKind {
    /// An embedding was planted, so the answer is yes.
    Planted,
    /// Every edge between the classes of one pattern edge is absent, so the
    /// answer is no.
    Broken,
    /// A broken host plus one edge between the two emptied classes that
    /// avoids the planted images. Every request stays satisfiable on its
    /// own; the answer is whatever the oracle says.
    Decoy,
    /// Random edges between classes; the answer is whatever the oracle says.
    Random,
}

#[derive(Clone, Debug)]
pub struct PsiCase {
    pub pattern: &'static str,
    pub seed: u64,
    pub kind: HostKind,
    pub psi: PsiInstance,
}

/// A seeded host for `pattern` on at most [`CORPUS_HOST_CAP`] vertices.
/// The kind cycles through planted, broken, decoy and random with the seed.
pub fn seeded_host(pattern: &UndirectedGraph, seed: u64) -> Result<(HostKind, PsiInstance)> {
    let mut r = rng(seed);
    let k = pattern.vertex_count();
    let n = r.gen_range(k..=CORPUS_HOST_CAP.max(k));
    let kind = match seed % 4 {
        0 => HostKind::Planted,
        1 => HostKind::Broken,
        2 => HostKind::Decoy,
        _ => HostKind::Random,
    };
    let mut classes: Vec<Vertex> = pattern.vertices().collect();
    classes.shuffle(&mut r);
    let mut psi: BTreeMap<Vertex, Vertex> = classes.iter().enumerate().map(|(u, &c)| (u as Vertex, c)).collect();
    for u in k..n {
        psi.insert(u as Vertex, classes[r.gen_range(0..k)]);
    }
    let members = |c: Vertex| -> Vec<Vertex> { psi.iter().filter(|(_, x)| **x == c).map(|(u, _)| *u).collect() };

    let edges: Vec<(Vertex, Vertex)> = pattern.edges().collect();
    let forbidden = edges[r.gen_range(0..edges.len())];
    let blocked = |a: Vertex, b: Vertex| {
        matches!(kind, HostKind::Broken | HostKind::Decoy) && {
            let (ca, cb) = (psi[&a], psi[&b]);
            (ca, cb) == forbidden || (cb, ca) == forbidden
        }
    };
    let mut host = UndirectedGraph::with_vertices(n);
    if kind != HostKind::Random {
        let phi: BTreeMap<Vertex, Vertex> = pattern
            .vertices()
            .map(|v| {
                let m = members(v);
                (v, m[r.gen_range(0..m.len())])
            })
            .collect();
        for &(a, b) in &edges {
            if !blocked(phi[&a], phi[&b]) {
                host.add_edge(phi[&a], phi[&b]);
            }
        }
        if kind == HostKind::Decoy {
            let (ca, cb) = forbidden;
            let pick = |c: Vertex, avoid: Vertex| members(c).into_iter().find(|&u| u != avoid);
            let decoy = match (pick(ca, phi[&ca]), pick(cb, phi[&cb])) {
                (Some(u), _) => Some((u, phi[&cb])),
                (None, Some(v)) => Some((phi[&ca], v)),
                (None, None) => None,
            };
            if let Some((u, v)) = decoy {
                host.add_edge(u, v);
            }
        }
    }
    let density = if kind == HostKind::Random { 0.6 } else { 0.15 };
    for a in 0..n as Vertex {
        for b in a + 1..n as Vertex {
            if r.gen_bool(density) && !blocked(a, b) {
                host.add_edge(a, b);
            }
        }
    }
    Ok((kind, PsiInstance::new(host, pattern.clone(), psi)?))
}

/// `per_pattern` seeded hosts for every shipped pattern.
pub fn psi_corpus(per_pattern: u64) -> Result<Vec<PsiCase>> {
    let mut out = Vec::new();
    for (name, pattern) in pattern_corpus() {
        for seed in 0..per_pattern {
            let (kind, psi) = seeded_host(&pattern, seed)?;
            out.push(PsiCase {
                pattern: name,
                seed,
                kind,
                psi,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns_are_cubic() {
        for (name, h) in pattern_corpus() {
            assert!(h.vertices().all(|v| h.degree(v) == 3), "{name}");
            assert!(h.is_connected(), "{name}");
        }
    }

    #[test]
    fn hosts_are_deterministic_and_small() {
        let (_, cube) = pattern_corpus().remove(3);
        for seed in 0..6 {
            let (k1, a) = seeded_host(&cube, seed).unwrap();
            let (k2, b) = seeded_host(&cube, seed).unwrap();
            assert_eq!(k1, k2);
            assert_eq!(a, b);
            assert!(a.host().vertex_count() <= CORPUS_HOST_CAP);
            for v in a.pattern().vertices() {
                assert!(!a.class(v).is_empty());
            }
        }
    }
}
