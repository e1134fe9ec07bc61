use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{reachable_avoiding, shortest_path_avoiding, DirectedPath, Direction, Vertex, WeightedDigraph};

use super::important::ImportantSet;

/// The four marked vertices around an important vertex `p_j`, with the
/// back-jump witnesses `Q_{3,1}` and `Q_{4,2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadruple {
    pub vertex: Vertex,
    pub p1: Vertex,
    pub p2: Vertex,
    pub p3: Vertex,
    pub p4: Vertex,
    pub q31: DirectedPath,
    pub q42: DirectedPath,
}

impl Quadruple {
    pub fn vertices(&self) -> [Vertex; 4] {
        [self.p1, self.p2, self.p3, self.p4]
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices().iter().all(|&v| v == self.vertex)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedSet {
    pub quadruples: Vec<Quadruple>,
    /// `Q_P` in path order.
    pub marked: Vec<Vertex>,
}

impl MarkedSet {
    pub fn len(&self) -> usize {
        self.marked.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marked.is_empty()
    }
}

/// For every path index `x`, the indices `y != x` joined from `p_x` by a
/// `P`-avoiding path.
pub(crate) fn jumps(g: &WeightedDigraph, p: &DirectedPath) -> Vec<BTreeSet<usize>> {
    let on_path = p.vertex_set();
    p.vertices()
        .iter()
        .enumerate()
        .map(|(x, &v)| {
            reachable_avoiding(g, v, &on_path, Direction::Forward)
                .into_iter()
                .filter_map(|u| p.position(u))
                .filter(|&y| y != x)
                .collect()
        })
        .collect()
}

fn witness(g: &WeightedDigraph, p: &DirectedPath, from: Vertex, to: Vertex) -> Result<DirectedPath> {
    if from == to {
        return Ok(DirectedPath::trivial(from));
    }
    let (path, _) = shortest_path_avoiding(g, from, to, &p.vertex_set())?
        .expect("index came from a P-avoiding search");
    Ok(path)
}

/// Marked vertices for every important vertex of `P`. Where the choice of
/// `p^2` or `p^3` is open, the candidate nearest `p_j` is taken.
pub fn marked_vertices(g: &WeightedDigraph, p: &DirectedPath, imp: &ImportantSet) -> Result<MarkedSet> {
    let reach = jumps(g, p);
    let len = reach.len();
    let at = |i: usize| p.vertices()[i];
    let mut quadruples = Vec::new();
    for &v in &imp.important {
        let j = p.position(v).expect("important vertices lie on P");
        let p1 = (j..len)
            .flat_map(|x| reach[x].iter().copied())
            .chain([j])
            .min()
            .unwrap();
        let p3 = if p1 == j {
            j
        } else {
            (j..len).find(|&x| reach[x].contains(&p1)).expect("p1 was reached from x >= j")
        };
        let p4 = (0..len)
            .filter(|&x| reach[x].range(..=j).next().is_some())
            .chain([j])
            .max()
            .unwrap();
        let p2 = if p4 == j {
            j
        } else {
            reach[p4].range(..=j).next_back().copied().expect("p4 reaches back")
        };
        quadruples.push(Quadruple {
            vertex: v,
            p1: at(p1),
            p2: at(p2),
            p3: at(p3),
            p4: at(p4),
            q31: witness(g, p, at(p3), at(p1))?,
            q42: witness(g, p, at(p4), at(p2))?,
        });
    }
    let mut marked: Vec<Vertex> = quadruples
        .iter()
        .flat_map(|q| q.vertices())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    marked.sort_by_key(|v| p.position(*v));
    Ok(MarkedSet { quadruples, marked })
}

/// Path vertices strictly between `p^1` and `p^4` that are neither
/// important nor `p^2`, `p^3`.
pub fn unmarked_between(p: &DirectedPath, imp: &ImportantSet, q: &Quadruple) -> Vec<Vertex> {
    let lo = p.position(q.p1).unwrap();
    let hi = p.position(q.p4).unwrap();
    let important: BTreeSet<Vertex> = imp.important.iter().copied().collect();
    p.vertices()[lo.min(hi)..=hi.max(lo)]
        .iter()
        .copied()
        .filter(|&v| v != q.p1 && v != q.p4 && v != q.p2 && v != q.p3 && !important.contains(&v))
        .collect()
}

/// Non-important vertices of `P` (other than its target) with out-degree
/// above two, or whose off-path out-neighbour has no `P`-avoiding path back
/// to an earlier vertex of `P`.
pub fn nonimportant_outdegree_violations(g: &WeightedDigraph, p: &DirectedPath, imp: &ImportantSet) -> Vec<Vertex> {
    let on_path = p.vertex_set();
    let seq = p.vertices();
    let mut bad = Vec::new();
    for (i, &v) in seq.iter().enumerate().take(seq.len() - 1) {
        if imp.contains(v) {
            continue;
        }
        if g.out_degree(v) > 2 {
            bad.push(v);
            continue;
        }
        for u in g.out_neighbors(v).filter(|u| !on_path.contains(u)) {
            let back = reachable_avoiding(g, u, &on_path, Direction::Forward)
                .into_iter()
                .filter_map(|w| p.position(w))
                .any(|k| k < i);
            if !back {
                bad.push(v);
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::important::important_vertices;

    #[test]
    fn no_back_jumps_collapse_to_the_vertex() {
        let g = WeightedDigraph::from_unit_arcs(4, [(0, 1), (1, 2), (3, 1)]).unwrap();
        let p = DirectedPath::new(vec![0, 1, 2]).unwrap();
        let imp = important_vertices(&g, &BTreeSet::from([0, 2, 3]), &p).unwrap();
        let m = marked_vertices(&g, &p, &imp).unwrap();
        assert_eq!(m.quadruples.len(), 1);
        assert!(m.quadruples[0].is_degenerate());
        assert_eq!(m.marked, vec![1]);
    }

    #[test]
    fn back_jump_is_marked() {
        // P = 0 1 2 3 4 5, back path 4 -> 6 -> 1, terminal 7 -> 3
        let arcs = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (6, 1), (7, 3)];
        let g = WeightedDigraph::from_unit_arcs(8, arcs).unwrap();
        let p = DirectedPath::new(vec![0, 1, 2, 3, 4, 5]).unwrap();
        let imp = important_vertices(&g, &BTreeSet::from([0, 5, 7]), &p).unwrap();
        assert_eq!(imp.important, vec![3]);
        let m = marked_vertices(&g, &p, &imp).unwrap();
        let q = &m.quadruples[0];
        assert_eq!((q.p1, q.p2, q.p3, q.p4), (1, 1, 4, 4));
        assert_eq!(q.q31.vertices(), &[4, 6, 1]);
        assert_eq!(m.marked, vec![1, 4]);
        assert!(unmarked_between(&p, &imp, q).contains(&2));
    }
}
