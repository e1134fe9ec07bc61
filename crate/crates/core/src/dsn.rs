//! The directed Steiner network problem: instances, solutions and the
//! predicates and transformations defined on them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{reachable_avoiding, Arc, Direction, Vertex, WeightedDigraph};
use crate::weight::Weight;

/// A host graph `G` together with a request digraph `R` on terminals
/// `T = V(R) ⊆ V(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsnInstance {
    host: WeightedDigraph,
    requests: BTreeSet<Arc>,
    terminals: BTreeSet<Vertex>,
}

impl DsnInstance {
    /// Requests must be distinct, loop-free and name host vertices.
    /// Terminals are exactly the request endpoints.
    pub fn new<I: IntoIterator<Item = Arc>>(host: WeightedDigraph, requests: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (s, t) in requests {
            host.check_vertex(s)?;
            host.check_vertex(t)?;
            if s == t {
                return Err(Error::input(format!("request {s}->{s} is a loop")));
            }
            if !set.insert((s, t)) {
                return Err(Error::input(format!("duplicate request {s}->{t}")));
            }
        }
        let terminals = set.iter().flat_map(|&(s, t)| [s, t]).collect();
        Ok(Self {
            host,
            requests: set,
            terminals,
        })
    }

    pub fn host(&self) -> &WeightedDigraph {
        &self.host
    }

    pub fn requests(&self) -> &BTreeSet<Arc> {
        &self.requests
    }

    pub fn terminals(&self) -> &BTreeSet<Vertex> {
        &self.terminals
    }

    /// `q = |T|`.
    pub fn terminal_count(&self) -> usize {
        self.terminals.len()
    }

    /// `p = |A(R)|`.
    pub fn request_count(&self) -> usize {
        self.requests.len()
    }

    /// Same requests on a different host.
    pub fn with_host(&self, host: WeightedDigraph) -> Result<Self> {
        Self::new(host, self.requests.iter().copied())
    }

    /// Same host with different requests.
    pub fn with_requests<I: IntoIterator<Item = Arc>>(&self, requests: I) -> Result<Self> {
        Self::new(self.host.clone(), requests)
    }

    /// Whether the requests form an out-star `{r -> t : t ∈ T \ {r}}`;
    /// returns the root.
    pub fn out_star_root(&self) -> Option<Vertex> {
        let roots: BTreeSet<Vertex> = self.requests.iter().map(|&(s, _)| s).collect();
        match roots.len() {
            1 => roots.into_iter().next(),
            _ => None,
        }
    }
}

/// A subgraph of the host, carrying the host weights of its arcs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolutionSubgraph {
    graph: WeightedDigraph,
}

impl SolutionSubgraph {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The arcs, looked up in `host`.
    pub fn from_arcs<'a, I>(host: &WeightedDigraph, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Arc>,
    {
        Ok(Self {
            graph: host.arc_subgraph(arcs)?,
        })
    }

    /// Every arc of `host`.
    pub fn whole(host: &WeightedDigraph) -> Self {
        Self {
            graph: host.without_isolated(),
        }
    }

    /// Wraps a graph; isolated vertices are dropped.
    pub fn from_graph(graph: &WeightedDigraph) -> Self {
        Self::whole(graph)
    }

    pub fn graph(&self) -> &WeightedDigraph {
        &self.graph
    }

    pub fn arcs(&self) -> BTreeSet<Arc> {
        self.graph.arc_set()
    }

    pub fn arc_count(&self) -> usize {
        self.graph.arc_count()
    }

    pub fn contains_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.graph.has_arc(u, v)
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn without_arc(&self, (u, v): Arc) -> Self {
        let mut graph = self.graph.clone();
        graph.remove_arc(u, v);
        Self {
            graph: graph.without_isolated(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "request")]
pub enum Verdict {
    Valid,
    /// The lexicographically first unsatisfied request.
    Violated(Arc),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Sum of arc weights.
pub fn cost(sol: &SolutionSubgraph) -> Weight {
    sol.graph.total_weight()
}

fn check_subgraph(inst: &DsnInstance, sol: &SolutionSubgraph) -> Result<()> {
    for (u, v, w) in sol.graph.arcs() {
        match inst.host.weight(u, v) {
            Some(hw) if hw == w => {}
            Some(_) => return Err(Error::input(format!("arc {u}->{v} has a weight differing from the host"))),
            None => return Err(Error::input(format!("arc {u}->{v} is not in the host"))),
        }
    }
    Ok(())
}

fn first_violation(requests: &BTreeSet<Arc>, g: &WeightedDigraph) -> Option<Arc> {
    let none = BTreeSet::new();
    let mut reach: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for &(s, t) in requests {
        if !g.contains_vertex(s) || !g.contains_vertex(t) {
            return Some((s, t));
        }
        let from_s = reach
            .entry(s)
            .or_insert_with(|| reachable_avoiding(g, s, &none, Direction::Forward));
        if !from_s.contains(&t) {
            return Some((s, t));
        }
    }
    None
}

/// Checks that `sol` contains an `s`-`t` path for every request `st`.
pub fn validate(inst: &DsnInstance, sol: &SolutionSubgraph) -> Result<Verdict> {
    check_subgraph(inst, sol)?;
    Ok(match first_violation(&inst.requests, &sol.graph) {
        None => Verdict::Valid,
        Some(r) => Verdict::Violated(r),
    })
}

/// Whether removing any single arc breaks some request.
pub fn is_inclusion_minimal(inst: &DsnInstance, sol: &SolutionSubgraph) -> Result<bool> {
    if let Verdict::Violated((s, t)) = validate(inst, sol)? {
        return Err(Error::precondition(format!(
            "solution is not valid: request {s}->{t} unsatisfied"
        )));
    }
    Ok(sol
        .arcs()
        .into_iter()
        .all(|a| first_violation(&inst.requests, &sol.without_arc(a).graph).is_some()))
}

/// Greedily drops arcs while the solution stays valid. Arcs are tried by
/// descending weight, ties by ascending `(tail, head)`. One pass suffices:
/// an arc needed in a graph stays needed in every subgraph of it.
pub fn minimize(inst: &DsnInstance, sol: &SolutionSubgraph) -> Result<SolutionSubgraph> {
    if let Verdict::Violated((s, t)) = validate(inst, sol)? {
        return Err(Error::precondition(format!(
            "solution is not valid: request {s}->{t} unsatisfied"
        )));
    }
    let mut order: Vec<(Vertex, Vertex, Weight)> = sol.graph.arcs().collect();
    order.sort_by(|a, b| b.2.cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    let mut cur = sol.clone();
    for (u, v, _) in order {
        let candidate = cur.without_arc((u, v));
        if first_violation(&inst.requests, &candidate.graph).is_none() {
            cur = candidate;
        }
    }
    Ok(cur)
}

/// `R'`: all terminal pairs `st` joined by a `T`-avoiding path in `g`.
pub fn normalized_requests_in(g: &WeightedDigraph, terminals: &BTreeSet<Vertex>) -> BTreeSet<Arc> {
    let mut out = BTreeSet::new();
    for &s in terminals.iter().filter(|s| g.contains_vertex(**s)) {
        for t in reachable_avoiding(g, s, terminals, Direction::Forward) {
            if t != s && terminals.contains(&t) {
                out.insert((s, t));
            }
        }
    }
    out
}

/// `R'` for a solution: `st ∈ R'` iff `sol` has a `T`-avoiding `s`-`t` path.
pub fn normalize_requests(sol: &SolutionSubgraph, terminals: &BTreeSet<Vertex>) -> BTreeSet<Arc> {
    normalized_requests_in(&sol.graph, terminals)
}

/// Reverses every host arc and every request.
pub fn reverse(inst: &DsnInstance) -> DsnInstance {
    DsnInstance {
        host: inst.host.reversed(),
        requests: inst.requests.iter().map(|&(s, t)| (t, s)).collect(),
        terminals: inst.terminals.clone(),
    }
}

pub fn reverse_solution(sol: &SolutionSubgraph) -> SolutionSubgraph {
    SolutionSubgraph {
        graph: sol.graph.reversed(),
    }
}

/// Requests forming a directed cycle through `order` (duplicates dropped).
pub fn cycle_requests(order: &[Vertex]) -> Vec<Arc> {
    let mut seen = BTreeSet::new();
    let ring: Vec<Vertex> = order.iter().copied().filter(|v| seen.insert(*v)).collect();
    if ring.len() < 2 {
        return Vec::new();
    }
    (0..ring.len())
        .map(|i| (ring[i], ring[(i + 1) % ring.len()]))
        .filter(|(s, t)| s != t)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, arcs: &[Arc]) -> WeightedDigraph {
        WeightedDigraph::from_unit_arcs(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn instance_rejects_loops_and_duplicates() {
        let g = unit(3, &[(0, 1)]);
        assert!(DsnInstance::new(g.clone(), [(1, 1)]).is_err());
        assert!(DsnInstance::new(g.clone(), [(0, 1), (0, 1)]).is_err());
        assert!(DsnInstance::new(g.clone(), [(0, 5)]).is_err());
        let inst = DsnInstance::new(g, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(inst.terminal_count(), 3);
        assert_eq!(inst.request_count(), 2);
    }

    #[test]
    fn validate_small_cases() {
        let g = unit(2, &[(0, 1), (1, 0)]);
        let empty = DsnInstance::new(g.clone(), []).unwrap();
        assert_eq!(validate(&empty, &SolutionSubgraph::empty()).unwrap(), Verdict::Valid);
        let inst = DsnInstance::new(g.clone(), [(0, 1)]).unwrap();
        let st = SolutionSubgraph::from_arcs(&g, &[(0, 1)]).unwrap();
        let ts = SolutionSubgraph::from_arcs(&g, &[(1, 0)]).unwrap();
        assert_eq!(validate(&inst, &st).unwrap(), Verdict::Valid);
        assert_eq!(validate(&inst, &ts).unwrap(), Verdict::Violated((0, 1)));
        let foreign = SolutionSubgraph::from_graph(&unit(3, &[(1, 2)]));
        assert!(validate(&inst, &foreign).is_err());
    }

    #[test]
    fn cost_sums_weights() {
        assert_eq!(cost(&SolutionSubgraph::empty()), Weight::ZERO);
        let g = unit(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(cost(&SolutionSubgraph::whole(&g)), Weight::integer(3));
    }

    #[test]
    fn minimality_and_minimize() {
        let g = unit(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let inst = DsnInstance::new(g.clone(), [(0, 2)]).unwrap();
        let direct = SolutionSubgraph::from_arcs(&g, &[(0, 2)]).unwrap();
        assert!(is_inclusion_minimal(&inst, &direct).unwrap());
        let with_spare = SolutionSubgraph::from_arcs(&g, &[(0, 2), (2, 3)]).unwrap();
        assert!(!is_inclusion_minimal(&inst, &with_spare).unwrap());
        let min = minimize(&inst, &SolutionSubgraph::whole(&g)).unwrap();
        assert!(is_inclusion_minimal(&inst, &min).unwrap());
        // equal weights: (0,1) is tried before (0,2) and (1,2), so the detour goes first
        assert_eq!(min.arcs(), BTreeSet::from([(0, 2)]));
        assert_eq!(minimize(&inst, &min).unwrap(), min);
        assert!(matches!(
            is_inclusion_minimal(&inst, &SolutionSubgraph::empty()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn normalization_examples() {
        let g = unit(2, &[(0, 1)]);
        let sol = SolutionSubgraph::whole(&g);
        assert_eq!(normalize_requests(&sol, &BTreeSet::from([0, 1])), BTreeSet::from([(0, 1)]));
        // s=0 -> x=1 -> u=2 -> t=3 with u a terminal
        let g = unit(4, &[(0, 1), (1, 2), (2, 3)]);
        let sol = SolutionSubgraph::whole(&g);
        let r = normalize_requests(&sol, &BTreeSet::from([0, 2, 3]));
        assert_eq!(r, BTreeSet::from([(0, 2), (2, 3)]));
    }

    #[test]
    fn reversal_is_an_involution() {
        let g = WeightedDigraph::from_arcs(3, [(0, 1, Weight::new(5, 2)), (1, 2, Weight::ONE)]).unwrap();
        let inst = DsnInstance::new(g, [(0, 2)]).unwrap();
        assert_eq!(reverse(&reverse(&inst)), inst);
        assert_eq!(reverse(&inst).requests(), &BTreeSet::from([(2, 0)]));
        let sol = SolutionSubgraph::whole(inst.host());
        let rsol = reverse_solution(&sol);
        assert_eq!(cost(&rsol), cost(&sol));
        assert!(validate(&reverse(&inst), &rsol).unwrap().is_valid());
    }

    #[test]
    fn cycle_request_helper() {
        assert_eq!(cycle_requests(&[3, 1, 2]), vec![(1, 2), (2, 3), (3, 1)]);
        assert_eq!(cycle_requests(&[4, 4, 5]), vec![(4, 5), (5, 4)]);
        assert!(cycle_requests(&[7, 7]).is_empty());
    }
}
