use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{reachable_avoiding, shortest_path_avoiding, DirectedPath, Direction, Vertex, WeightedDigraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `(x, ←)`: a path from terminal `x` into `P`.
    From,
    /// `(x, →)`: a path from `P` to terminal `x`.
    To,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub terminal: Vertex,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchor {
    pub terminal: Vertex,
    pub side: Side,
    /// Interior avoids `V(P) ∪ T`.
    pub witness: DirectedPath,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImportantSet {
    pub path: DirectedPath,
    /// Important vertices in path order.
    pub important: Vec<Vertex>,
    pub labels: BTreeMap<Vertex, BTreeSet<Label>>,
    /// `g_P`.
    pub anchors: BTreeMap<Vertex, Anchor>,
    /// Important vertices that got no label; empty whenever the labelling
    /// claim holds.
    pub unlabelled: Vec<Vertex>,
    /// Important vertices without a `(V(P) ∪ T)`-avoiding witness.
    pub unanchored: Vec<Vertex>,
}

impl ImportantSet {
    pub fn len(&self) -> usize {
        self.important.len()
    }

    pub fn is_empty(&self) -> bool {
        self.important.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.important.contains(&v)
    }

    /// Largest `|g_P^{-1}(x)|` over terminals `x`.
    pub fn max_anchor_load(&self) -> usize {
        let mut load: BTreeMap<Vertex, usize> = BTreeMap::new();
        for a in self.anchors.values() {
            *load.entry(a.terminal).or_default() += 1;
        }
        load.into_values().max().unwrap_or(0)
    }
}

pub(crate) fn check_terminal_path(g: &WeightedDigraph, terminals: &BTreeSet<Vertex>, p: &DirectedPath) -> Result<()> {
    DirectedPath::in_graph(g, p.vertices().to_vec())?;
    if !terminals.contains(&p.source()) || !terminals.contains(&p.target()) {
        return Err(Error::input("path endpoints must be terminals"));
    }
    if p.is_trivial() {
        return Err(Error::input("path must join two distinct terminals"));
    }
    if let Some(x) = p.internal().iter().find(|v| terminals.contains(v)) {
        return Err(Error::input(format!("path passes through terminal {x}")));
    }
    Ok(())
}

/// Important vertices of `P`, their labels, and the anchor map `g_P`.
pub fn important_vertices(g: &WeightedDigraph, terminals: &BTreeSet<Vertex>, p: &DirectedPath) -> Result<ImportantSet> {
    check_terminal_path(g, terminals, p)?;
    let on_path = p.vertex_set();
    let (s, t) = (p.source(), p.target());
    let pos = |v: &Vertex| p.position(*v).expect("on path");

    let mut hits: BTreeMap<(Vertex, Side), Vec<Vertex>> = BTreeMap::new();
    for &x in terminals {
        for (side, dir) in [(Side::From, Direction::Forward), (Side::To, Direction::Backward)] {
            let mut found: Vec<Vertex> = reachable_avoiding(g, x, &on_path, dir)
                .into_iter()
                .filter(|v| on_path.contains(v))
                .collect();
            found.sort_by_key(pos);
            hits.insert((x, side), found);
        }
    }

    let mut important: Vec<Vertex> = terminals
        .iter()
        .filter(|x| !on_path.contains(x))
        .flat_map(|&x| hits[&(x, Side::From)].iter().chain(&hits[&(x, Side::To)]).copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    important.sort_by_key(pos);
    let is_important: BTreeSet<Vertex> = important.iter().copied().collect();

    let mut labels: BTreeMap<Vertex, BTreeSet<Label>> = BTreeMap::new();
    for (&(x, side), found) in &hits {
        if (x, side) == (s, Side::From) || (x, side) == (t, Side::To) {
            continue;
        }
        let chosen = match side {
            Side::From => found.first(),
            Side::To => found.last(),
        };
        if let Some(&v) = chosen.filter(|v| is_important.contains(v)) {
            labels.entry(v).or_default().insert(Label { terminal: x, side });
        }
    }

    let mut blocked = on_path.clone();
    blocked.extend(terminals.iter().copied());
    let mut anchors = BTreeMap::new();
    let mut unanchored = Vec::new();
    for &v in &important {
        let mut anchor = None;
        for label in labels.get(&v).into_iter().flatten() {
            let (from, to) = match label.side {
                Side::From => (label.terminal, v),
                Side::To => (v, label.terminal),
            };
            if let Some((witness, _)) = shortest_path_avoiding(g, from, to, &blocked)? {
                anchor = Some(Anchor {
                    terminal: label.terminal,
                    side: label.side,
                    witness,
                });
                break;
            }
        }
        match anchor {
            Some(a) => {
                anchors.insert(v, a);
            }
            None => unanchored.push(v),
        }
    }
    let unlabelled = important.iter().copied().filter(|v| !labels.contains_key(v)).collect();
    Ok(ImportantSet {
        path: p.clone(),
        important,
        labels,
        anchors,
        unlabelled,
        unanchored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_path_has_no_important_vertices() {
        let g = WeightedDigraph::from_unit_arcs(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let p = DirectedPath::new(vec![0, 1, 2, 3]).unwrap();
        let imp = important_vertices(&g, &BTreeSet::from([0, 3]), &p).unwrap();
        assert!(imp.is_empty());
    }

    #[test]
    fn side_terminal_makes_vertex_important() {
        // P = (s=0, a=1, t=2), x=3 -> a
        let g = WeightedDigraph::from_unit_arcs(4, [(0, 1), (1, 2), (3, 1)]).unwrap();
        let p = DirectedPath::new(vec![0, 1, 2]).unwrap();
        let imp = important_vertices(&g, &BTreeSet::from([0, 2, 3]), &p).unwrap();
        assert_eq!(imp.important, vec![1]);
        assert_eq!(imp.labels[&1], BTreeSet::from([Label { terminal: 3, side: Side::From }]));
        assert_eq!(imp.anchors[&1].terminal, 3);
        assert_eq!(imp.anchors[&1].witness.vertices(), &[3, 1]);
        assert!(imp.unlabelled.is_empty());
    }

    #[test]
    fn rejects_paths_through_terminals() {
        let g = WeightedDigraph::from_unit_arcs(3, [(0, 1), (1, 2)]).unwrap();
        let p = DirectedPath::new(vec![0, 1, 2]).unwrap();
        assert!(important_vertices(&g, &BTreeSet::from([0, 1, 2]), &p).is_err());
        assert!(important_vertices(&g, &BTreeSet::from([0, 1]), &p).is_err());
    }
}
