use std::collections::{BTreeMap, BTreeSet};

use crate::dsn::{DsnInstance, SolutionSubgraph};
use crate::error::{Error, Result};
use crate::graph::{Arc, Vertex, WeightedDigraph};
use crate::weight::Weight;

use super::labelling::{build_labelling, edge, Edge, Labelling};
use super::psi::{Embedding, PsiInstance};

/// The DSN instance produced from a PSI instance, with every vertex and arc
/// tagged by its stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub psi: PsiInstance,
    pub labelling: Labelling,
    pub dsn: DsnInstance,
    /// Host vertex to its copy in `V`.
    pub v: BTreeMap<Vertex, Vertex>,
    /// Host edge to `w_{uv}`.
    pub w: BTreeMap<Edge, Vertex>,
    pub x: Vec<Vertex>,
    pub y: Vec<Vertex>,
    pub z: Vec<Vertex>,
    pub arcs_v: Vec<Arc>,
    pub arcs_w: Vec<Arc>,
    pub requests_y: Vec<Arc>,
    pub requests_z: Vec<Arc>,
    /// `2|V(H)| + 3|E(H)|`.
    pub threshold: usize,
    /// Host edges whose class pair is not a pattern edge; their `w` vertex
    /// has no arc into `Z`.
    pub dead_edges: Vec<Edge>,
    pub warnings: Vec<String>,
}

/// Runs the labelling and the construction.
pub fn reduce(psi: &PsiInstance) -> Result<ReductionOutput> {
    let lab = build_labelling(psi.pattern())?;
    build_dsn(psi, lab)
}

/// Builds `G'` with unit weights and the request set `A_Y ∪ A_Z`. The
/// vertex order is `V`, `W` (host edges ascending), `X`, `Y`, `Z`.
pub fn build_dsn(psi: &PsiInstance, lab: Labelling) -> Result<ReductionOutput> {
    lab.verify(psi.pattern())?;
    let host = psi.host();
    let pattern = psi.pattern();
    let mut warnings = Vec::new();
    if !psi.is_pattern_cubic() {
        warnings.push("pattern is not 3-regular; only the degree bound is used".to_string());
    }

    let mut next: Vertex = 0;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let v: BTreeMap<Vertex, Vertex> = host.vertices().map(|u| (u, fresh())).collect();
    let host_edges: Vec<Edge> = host.edges().map(|(a, b)| edge(a, b)).collect();
    let w: BTreeMap<Edge, Vertex> = host_edges.iter().map(|&e| (e, fresh())).collect();
    let x: Vec<Vertex> = (0..lab.x_count).map(|_| fresh()).collect();
    let y: Vec<Vertex> = (0..lab.y_count).map(|_| fresh()).collect();
    let z: Vec<Vertex> = (0..lab.z_count).map(|_| fresh()).collect();

    let class = |u: Vertex| psi.class_of(u).expect("validated class map");
    let mut arcs_v = Vec::new();
    for (&u, &gu) in &v {
        arcs_v.push((x[lab.alpha[&class(u)]], gu));
        arcs_v.push((gu, y[lab.beta[&class(u)]]));
    }
    let mut arcs_w = Vec::new();
    let mut dead_edges = Vec::new();
    for (&(a, b), &gw) in &w {
        arcs_w.push((v[&a], gw));
        arcs_w.push((v[&b], gw));
        match lab.gamma.get(&edge(class(a), class(b))) {
            Some(&c) => arcs_w.push((gw, z[c])),
            None => dead_edges.push((a, b)),
        }
    }

    let requests_y: Vec<Arc> = pattern
        .vertices()
        .map(|u| (x[lab.alpha[&u]], y[lab.beta[&u]]))
        .collect();
    let mut requests_z = Vec::new();
    for (a, b) in pattern.edges() {
        let c = z[lab.gamma[&edge(a, b)]];
        requests_z.push((x[lab.alpha[&a]], c));
        requests_z.push((x[lab.alpha[&b]], c));
    }

    let mut g = WeightedDigraph::with_vertices(next as usize);
    for &(s, t) in arcs_v.iter().chain(&arcs_w) {
        g.add_arc(s, t, Weight::ONE)?;
    }
    let distinct: BTreeSet<Arc> = requests_y.iter().chain(&requests_z).copied().collect();
    if distinct.len() != requests_y.len() + requests_z.len() {
        return Err(Error::invariant("request strata are not disjoint"));
    }
    let dsn = DsnInstance::new(g, distinct)?;
    let out = ReductionOutput {
        psi: psi.clone(),
        threshold: 2 * pattern.vertex_count() + 3 * pattern.edge_count(),
        labelling: lab,
        dsn,
        v,
        w,
        x,
        y,
        z,
        arcs_v,
        arcs_w,
        requests_y,
        requests_z,
        dead_edges,
        warnings,
    };
    out.audit()?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stratum {
    V,
    W,
    X,
    Y,
    Z,
}

impl ReductionOutput {
    fn stratum(&self, g: Vertex) -> Stratum {
        let nv = self.v.len() as Vertex;
        let nw = nv + self.w.len() as Vertex;
        let nx = nw + self.x.len() as Vertex;
        let ny = nx + self.y.len() as Vertex;
        match g {
            _ if g < nv => Stratum::V,
            _ if g < nw => Stratum::W,
            _ if g < nx => Stratum::X,
            _ if g < ny => Stratum::Y,
            _ => Stratum::Z,
        }
    }

    pub fn q(&self) -> usize {
        self.x.len() + self.y.len() + self.z.len()
    }

    /// Structural audit: arcs only go `X -> V`, `V -> Y`, `V -> W` and
    /// `W -> Z`, so every `X`-`Y` path has length two through `V` and every
    /// `X`-`Z` path length three through `V` and `W`. Also checks the
    /// stratum cardinalities.
    pub fn audit(&self) -> Result<()> {
        use Stratum::*;
        let host = self.dsn.host();
        let strata: BTreeSet<Arc> = self.arcs_v.iter().chain(&self.arcs_w).copied().collect();
        if strata.len() != self.arcs_v.len() + self.arcs_w.len() || strata != host.arc_set() {
            return Err(Error::invariant("arc strata do not partition A(G')"));
        }
        for (s, t, w) in host.arcs() {
            let ok = matches!(
                (self.stratum(s), self.stratum(t)),
                (X, V) | (V, Y) | (V, W) | (W, Z)
            );
            if !ok || w != Weight::ONE {
                return Err(Error::invariant(format!("arc {s}->{t} breaks the stratified shape")));
            }
        }
        let k = self.psi.k();
        let m = self.psi.pattern().edge_count();
        if self.requests_y.len() != k || self.requests_z.len() != 2 * m {
            return Err(Error::invariant("request stratum sizes differ from |V(H)| and 2|E(H)|"));
        }
        Ok(())
    }

    /// The subgraph `G'[X ∪ Y ∪ Z ∪ V' ∪ W']` for an embedding `φ`.
    pub fn encode_embedding(&self, phi: &Embedding) -> Result<SolutionSubgraph> {
        let mut keep: BTreeSet<Vertex> = self.x.iter().chain(&self.y).chain(&self.z).copied().collect();
        for u in phi.values() {
            keep.insert(*self.v.get(u).ok_or(Error::UnknownVertex(*u))?);
        }
        for (a, b) in self.psi.pattern().edges() {
            let e = edge(phi[&a], phi[&b]);
            let gw = self
                .w
                .get(&e)
                .ok_or_else(|| Error::precondition(format!("host has no edge {}-{}", e.0, e.1)))?;
            keep.insert(*gw);
        }
        Ok(SolutionSubgraph::from_graph(&self.dsn.host().induced(&keep)))
    }

    /// Reads `φ` off a solution within the threshold.
    pub fn extract_embedding(&self, sol: &SolutionSubgraph) -> Result<Embedding> {
        let arcs = sol.arc_count();
        if arcs > self.threshold {
            return Err(Error::precondition(format!(
                "solution has {arcs} arcs, above the threshold {}",
                self.threshold
            )));
        }
        let g = sol.graph().without_isolated();
        let lab = &self.labelling;
        let mut phi = Embedding::new();
        for h in self.psi.pattern().vertices() {
            let (xa, yb) = (self.x[lab.alpha[&h]], self.y[lab.beta[&h]]);
            let on_path: Vec<Vertex> = self
                .psi
                .class(h)
                .into_iter()
                .filter(|u| {
                    let gu = self.v[u];
                    g.has_arc(xa, gu) && g.has_arc(gu, yb)
                })
                .collect();
            match on_path.as_slice() {
                [u] => {
                    phi.insert(h, *u);
                }
                [] => return Err(Error::precondition(format!("no α-β path for pattern vertex {h}"))),
                _ => {
                    return Err(Error::invariant(format!(
                        "pattern vertex {h} has {} candidate images",
                        on_path.len()
                    )))
                }
            }
        }
        for (a, b) in self.psi.pattern().edges() {
            let e = edge(phi[&a], phi[&b]);
            let c = self.z[lab.gamma[&edge(a, b)]];
            let realized = self.w.get(&e).is_some_and(|&gw| {
                g.has_arc(self.v[&e.0], gw) && g.has_arc(self.v[&e.1], gw) && g.has_arc(gw, c)
            });
            if !realized {
                return Err(Error::invariant(format!("pattern edge {a}-{b} is not realized through W")));
            }
        }
        if !self.psi.is_embedding(&phi) {
            return Err(Error::invariant("extracted map is not an embedding"));
        }
        Ok(phi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsn::{cost, validate};
    use crate::graph::UndirectedGraph;

    fn k4_identity() -> PsiInstance {
        let ident = (0..4).map(|v| (v, v)).collect();
        PsiInstance::new(UndirectedGraph::complete(4), UndirectedGraph::complete(4), ident).unwrap()
    }

    #[test]
    fn k4_sizes() {
        let out = reduce(&k4_identity()).unwrap();
        let lab = &out.labelling;
        assert_eq!(
            out.dsn.host().vertex_count(),
            4 + 6 + lab.x_count + lab.y_count + lab.z_count
        );
        assert_eq!(out.dsn.request_count(), 16);
        assert_eq!(out.threshold, 26);
        assert_eq!(out.arcs_v.len(), 8);
        assert_eq!(out.arcs_w.len(), 18);
        assert!(out.dead_edges.is_empty());
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn single_edge_arc_pattern() {
        // pattern u'-v', host u-v with ψ(u) = u', ψ(v) = v'
        let psi = PsiInstance::new(
            UndirectedGraph::from_edges(2, [(0, 1)]),
            UndirectedGraph::from_edges(2, [(0, 1)]),
            BTreeMap::from([(0, 0), (1, 1)]),
        )
        .unwrap();
        let out = reduce(&psi).unwrap();
        let lab = &out.labelling;
        let (u, w) = (out.v[&0], out.w[&(0, 1)]);
        let g = out.dsn.host();
        assert!(g.has_arc(out.x[lab.alpha[&0]], u));
        assert!(g.has_arc(u, w));
        assert!(g.has_arc(w, out.z[lab.gamma[&(0, 1)]]));
        assert!(g.has_arc(u, out.y[lab.beta[&0]]));
        assert_eq!(out.warnings.len(), 1);
    }

    #[test]
    fn identity_round_trip() {
        let out = reduce(&k4_identity()).unwrap();
        let phi: Embedding = (0..4).map(|v| (v, v)).collect();
        let sol = out.encode_embedding(&phi).unwrap();
        assert!(validate(&out.dsn, &sol).unwrap().is_valid());
        assert_eq!(cost(&sol), Weight::integer(26));
        assert_eq!(out.extract_embedding(&sol).unwrap(), phi);
    }

    #[test]
    fn over_budget_is_rejected() {
        let mut host = UndirectedGraph::complete(4);
        host.add_edge(4, 1);
        let psi = PsiInstance::new(
            host,
            UndirectedGraph::complete(4),
            BTreeMap::from([(0, 0), (1, 1), (2, 2), (3, 3), (4, 0)]),
        )
        .unwrap();
        let out = reduce(&psi).unwrap();
        let sol = SolutionSubgraph::whole(out.dsn.host());
        assert!(matches!(out.extract_embedding(&sol), Err(Error::Precondition(_))));
    }
}
