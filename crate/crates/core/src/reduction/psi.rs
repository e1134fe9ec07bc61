use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{UndirectedGraph, Vertex};

/// An injective map from pattern vertices to host vertices.
pub type Embedding = BTreeMap<Vertex, Vertex>;

/// Largest pattern the backtracking oracle accepts.
pub const PSI_BRUTEFORCE_CAP: usize = 10;

/// Partitioned subgraph isomorphism: does `pattern` embed into `host` so
/// that every pattern vertex `v` lands in its class `ψ⁻¹(v)`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiInstance {
    host: UndirectedGraph,
    pattern: UndirectedGraph,
    psi: BTreeMap<Vertex, Vertex>,
}

impl PsiInstance {
    pub fn new(host: UndirectedGraph, pattern: UndirectedGraph, psi: BTreeMap<Vertex, Vertex>) -> Result<Self> {
        if pattern.vertex_count() > host.vertex_count() {
            return Err(Error::input(format!(
                "pattern has {} vertices but the host only {}",
                pattern.vertex_count(),
                host.vertex_count()
            )));
        }
        for u in host.vertices() {
            match psi.get(&u) {
                None => return Err(Error::input(format!("host vertex {u} has no class"))),
                Some(v) if !pattern.contains_vertex(*v) => {
                    return Err(Error::input(format!("host vertex {u} is mapped to unknown pattern vertex {v}")))
                }
                Some(_) => {}
            }
        }
        if let Some(u) = psi.keys().find(|u| !host.contains_vertex(**u)) {
            return Err(Error::UnknownVertex(*u));
        }
        Ok(Self { host, pattern, psi })
    }

    pub fn host(&self) -> &UndirectedGraph {
        &self.host
    }

    pub fn pattern(&self) -> &UndirectedGraph {
        &self.pattern
    }

    pub fn psi(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.psi
    }

    /// `k = |V(H)|`.
    pub fn k(&self) -> usize {
        self.pattern.vertex_count()
    }

    pub fn class_of(&self, u: Vertex) -> Option<Vertex> {
        self.psi.get(&u).copied()
    }

    /// `ψ⁻¹(v)` in ascending order.
    pub fn class(&self, v: Vertex) -> Vec<Vertex> {
        self.psi.iter().filter(|(_, c)| **c == v).map(|(u, _)| *u).collect()
    }

    pub fn is_pattern_cubic(&self) -> bool {
        self.pattern.vertices().all(|v| self.pattern.degree(v) == 3)
    }

    /// Checks injectivity, `ψ ∘ φ = id` and that every pattern edge maps to
    /// a host edge.
    pub fn is_embedding(&self, phi: &Embedding) -> bool {
        let covers = self.pattern.vertices().all(|v| phi.contains_key(&v)) && phi.len() == self.k();
        let images: BTreeSet<Vertex> = phi.values().copied().collect();
        covers
            && images.len() == phi.len()
            && phi.iter().all(|(v, u)| self.class_of(*u) == Some(*v))
            && self.pattern.edges().all(|(a, b)| self.host.has_edge(phi[&a], phi[&b]))
    }
}

/// Backtracking over class-respecting assignments in ascending pattern
/// order. Returns the first embedding found.
pub fn solve_psi_bruteforce(psi: &PsiInstance) -> Result<Option<Embedding>> {
    if psi.k() > PSI_BRUTEFORCE_CAP {
        return Err(Error::Capacity {
            what: "pattern vertices",
            limit: PSI_BRUTEFORCE_CAP,
            actual: psi.k(),
        });
    }
    let order: Vec<Vertex> = psi.pattern().vertices().collect();
    let candidates: Vec<Vec<Vertex>> = order.iter().map(|&v| psi.class(v)).collect();
    let mut phi = Embedding::new();

    fn extend(psi: &PsiInstance, order: &[Vertex], candidates: &[Vec<Vertex>], phi: &mut Embedding) -> bool {
        let depth = phi.len();
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for &u in &candidates[depth] {
            let fits = psi
                .pattern()
                .neighbors(v)
                .filter_map(|w| phi.get(&w))
                .all(|&x| psi.host().has_edge(u, x));
            if fits {
                phi.insert(v, u);
                if extend(psi, order, candidates, phi) {
                    return true;
                }
                phi.remove(&v);
            }
        }
        false
    }

    Ok(extend(psi, &order, &candidates, &mut phi).then_some(phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(n: usize) -> BTreeMap<Vertex, Vertex> {
        (0..n as Vertex).map(|v| (v, v)).collect()
    }

    #[test]
    fn single_edge_pattern() {
        let pattern = UndirectedGraph::from_edges(2, [(0, 1)]);
        let host = UndirectedGraph::from_edges(4, [(0, 3), (1, 2)]);
        let psi = PsiInstance::new(host, pattern, BTreeMap::from([(0, 0), (1, 0), (2, 1), (3, 1)])).unwrap();
        let phi = solve_psi_bruteforce(&psi).unwrap().unwrap();
        assert_eq!(phi, BTreeMap::from([(0, 0), (1, 3)]));
        assert!(psi.is_embedding(&phi));
    }

    #[test]
    fn edgeless_pattern_takes_any_injection() {
        let pattern = UndirectedGraph::with_vertices(3);
        let host = UndirectedGraph::with_vertices(3);
        let psi = PsiInstance::new(host, pattern, identity(3)).unwrap();
        assert_eq!(solve_psi_bruteforce(&psi).unwrap(), Some(identity(3)));
    }

    #[test]
    fn k4_not_in_c4() {
        let psi = PsiInstance::new(UndirectedGraph::cycle(4), UndirectedGraph::complete(4), identity(4)).unwrap();
        assert_eq!(solve_psi_bruteforce(&psi).unwrap(), None);
        let yes = PsiInstance::new(UndirectedGraph::complete(4), UndirectedGraph::complete(4), identity(4)).unwrap();
        assert_eq!(solve_psi_bruteforce(&yes).unwrap(), Some(identity(4)));
    }

    #[test]
    fn rejects_bad_maps() {
        let g = UndirectedGraph::with_vertices(2);
        assert!(PsiInstance::new(g.clone(), UndirectedGraph::with_vertices(3), identity(2)).is_err());
        assert!(PsiInstance::new(g.clone(), g.clone(), BTreeMap::from([(0, 0)])).is_err());
        assert!(PsiInstance::new(g.clone(), g, BTreeMap::from([(0, 0), (1, 5)])).is_err());
    }

    #[test]
    fn bruteforce_cap() {
        let g = UndirectedGraph::with_vertices(11);
        let psi = PsiInstance::new(g.clone(), g, identity(11)).unwrap();
        assert!(matches!(solve_psi_bruteforce(&psi), Err(Error::Capacity { .. })));
    }
}
