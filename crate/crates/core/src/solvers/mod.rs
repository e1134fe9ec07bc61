//! Exact solvers: an exhaustive oracle, branch and bound, and a directed
//! Dreyfus-Wagner program for out-star requests.

mod bnb;
mod certified;
mod dst;
mod exhaustive;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dsn::{cost, DsnInstance, SolutionSubgraph};
use crate::graph::{Arc, Vertex};
use crate::weight::Weight;

pub use bnb::{solve_bnb, solve_bnb_within};
pub use certified::solve_with_certificate;
pub use dst::solve_dst;
pub use exhaustive::{solve_exhaustive, EXHAUSTIVE_ARC_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Exhaustive,
    Bnb,
    Dst,
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Engine::Exhaustive => "exhaustive",
            Engine::Bnb => "bnb",
            Engine::Dst => "dst",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Optimal {
        solution: SolutionSubgraph,
        cost: Weight,
    },
    /// No solution exists. For a bounded search this means no solution of
    /// cost at most the cutoff exists.
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub engine: Engine,
    pub outcome: Outcome,
    /// Search nodes or DP states visited.
    pub nodes: u64,
    pub proven_optimal: bool,
}

impl SolveResult {
    fn optimal(engine: Engine, solution: SolutionSubgraph, nodes: u64) -> Self {
        let c = cost(&solution);
        Self {
            engine,
            outcome: Outcome::Optimal { solution, cost: c },
            nodes,
            proven_optimal: true,
        }
    }

    fn infeasible(engine: Engine, nodes: u64) -> Self {
        Self {
            engine,
            outcome: Outcome::Infeasible,
            nodes,
            proven_optimal: true,
        }
    }

    pub fn cost(&self) -> Option<Weight> {
        match &self.outcome {
            Outcome::Optimal { cost, .. } => Some(*cost),
            Outcome::Infeasible => None,
        }
    }

    pub fn solution(&self) -> Option<&SolutionSubgraph> {
        match &self.outcome {
            Outcome::Optimal { solution, .. } => Some(solution),
            Outcome::Infeasible => None,
        }
    }

    fn replace_solution(&mut self, solution: SolutionSubgraph) {
        if let Outcome::Optimal { solution: s, cost: c } = &mut self.outcome {
            *c = cost(&solution);
            *s = solution;
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, Outcome::Optimal { .. })
    }
}

/// Dense re-indexing of an instance for the search engines. Arcs keep the
/// ascending `(tail, head)` order of the host.
struct Compact {
    ids: Vec<Vertex>,
    arcs: Vec<(usize, usize, Weight)>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    requests: Vec<(usize, usize)>,
}

impl Compact {
    fn new(inst: &DsnInstance) -> Self {
        let ids: Vec<Vertex> = inst.host().vertices().collect();
        let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let arcs: Vec<(usize, usize, Weight)> = inst
            .host()
            .arcs()
            .map(|(u, v, w)| (index[&u], index[&v], w))
            .collect();
        let mut out = vec![Vec::new(); ids.len()];
        let mut inc = vec![Vec::new(); ids.len()];
        for (i, &(u, v, _)) in arcs.iter().enumerate() {
            out[u].push(i);
            inc[v].push(i);
        }
        let requests = inst
            .requests()
            .iter()
            .map(|(s, t)| (index[s], index[t]))
            .collect();
        Self {
            ids,
            arcs,
            out,
            inc,
            requests,
        }
    }

    fn host_arc(&self, i: usize) -> Arc {
        let (u, v, _) = self.arcs[i];
        (self.ids[u], self.ids[v])
    }

    fn solution(&self, inst: &DsnInstance, chosen: impl Iterator<Item = usize>) -> SolutionSubgraph {
        let arcs: Vec<Arc> = chosen.map(|i| self.host_arc(i)).collect();
        SolutionSubgraph::from_arcs(inst.host(), &arcs).expect("arcs come from the host")
    }
}
