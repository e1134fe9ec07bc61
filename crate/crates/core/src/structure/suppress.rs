use std::collections::{BTreeMap, BTreeSet};

use crate::dsn::{DsnInstance, SolutionSubgraph};
use crate::error::{Error, Result};
use crate::graph::{Arc, DirectedPath, Vertex, WeightedDigraph};

/// Maps every arc created by suppression to the path of the original
/// solution it stands for.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpansionMap {
    paths: BTreeMap<Arc, DirectedPath>,
}

impl ExpansionMap {
    pub fn get(&self, arc: &Arc) -> Option<&DirectedPath> {
        self.paths.get(arc)
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Arc, &DirectedPath)> {
        self.paths.iter()
    }

    fn expand(&self, (u, v): Arc) -> DirectedPath {
        self.paths
            .get(&(u, v))
            .cloned()
            .unwrap_or_else(|| DirectedPath::new(vec![u, v]).expect("arc endpoints differ"))
    }

    /// Original arcs behind a path of the suppressed graph.
    pub fn lift(&self, path: &DirectedPath) -> Result<DirectedPath> {
        let mut out = DirectedPath::trivial(path.source());
        for arc in path.arcs() {
            out = out.concat(&self.expand(arc))?;
        }
        Ok(out)
    }
}

/// Removes each non-terminal with exactly two neighbours `u, w`, adding
/// `uw` when `uv, vw` were present and `wu` when `wv, vu` were, with summed
/// weights. The smallest eligible id is suppressed first.
pub fn suppress_degree_two(inst: &DsnInstance, sol: &SolutionSubgraph) -> Result<(SolutionSubgraph, ExpansionMap)> {
    let (g, map) = suppress_graph(sol.graph(), inst.terminals())?;
    Ok((SolutionSubgraph::from_graph(&g), map))
}

pub(crate) fn suppress_graph(
    g: &WeightedDigraph,
    terminals: &BTreeSet<Vertex>,
) -> Result<(WeightedDigraph, ExpansionMap)> {
    let mut g = g.without_isolated();
    let mut map = ExpansionMap::default();
    for v in g.vertices().collect::<Vec<_>>() {
        if !terminals.contains(&v) && g.neighbors(v).len() == 1 {
            return Err(Error::precondition(format!(
                "non-terminal {v} has a single neighbour, so the solution is not inclusion-minimal"
            )));
        }
    }
    loop {
        let Some(v) = g
            .vertices()
            .find(|&v| !terminals.contains(&v) && g.neighbors(v).len() == 2)
        else {
            break;
        };
        let nb: Vec<Vertex> = g.neighbors(v).into_iter().collect();
        let (u, w) = (nb[0], nb[1]);
        let mut created = Vec::new();
        for (x, y) in [(u, w), (w, u)] {
            if let (Some(w1), Some(w2)) = (g.weight(x, v), g.weight(v, y)) {
                if g.has_arc(x, y) {
                    return Err(Error::precondition(format!(
                        "suppressing {v} duplicates arc {x}->{y}, so the solution is not inclusion-minimal"
                    )));
                }
                let path = map.expand((x, v)).concat(&map.expand((v, y)))?;
                created.push((x, y, w1 + w2, path));
            }
        }
        if created.is_empty() {
            return Err(Error::precondition(format!(
                "non-terminal {v} is a source or sink, so the solution is not inclusion-minimal"
            )));
        }
        for x in [u, w] {
            map.paths.remove(&(x, v));
            map.paths.remove(&(v, x));
        }
        g.remove_vertex(v);
        for (x, y, weight, path) in created {
            g.add_arc(x, y, weight)?;
            map.paths.insert((x, y), path);
        }
        for x in [u, w] {
            if !terminals.contains(&x) && g.neighbors(x).len() <= 1 {
                return Err(Error::precondition(format!(
                    "non-terminal {x} drops to a single neighbour, so the solution is not inclusion-minimal"
                )));
            }
        }
    }
    Ok((g, map))
}
