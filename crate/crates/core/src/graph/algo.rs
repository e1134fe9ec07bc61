use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};

use super::{DirectedPath, UndirectedGraph, Vertex, WeightedDigraph};
use crate::error::Result;
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Paths leaving the start vertex.
    Forward,
    /// Paths entering the start vertex.
    Backward,
}

/// Vertices joined to `start` by a path (in `dir`) whose internal vertices
/// avoid `forbidden`. Endpoints are exempt, so forbidden vertices can be
/// reached but are never passed through. Includes `start` itself.
pub fn reachable_avoiding(
    g: &WeightedDigraph,
    start: Vertex,
    forbidden: &BTreeSet<Vertex>,
    dir: Direction,
) -> BTreeSet<Vertex> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if u != start && forbidden.contains(&u) {
            continue;
        }
        let next: Vec<Vertex> = match dir {
            Direction::Forward => g.out_neighbors(u).collect(),
            Direction::Backward => g.in_neighbors(u).collect(),
        };
        for v in next {
            if seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Whether some `s`-`t` path has all internal vertices outside `forbidden`.
pub fn reaches(
    g: &WeightedDigraph,
    s: Vertex,
    t: Vertex,
    forbidden: &BTreeSet<Vertex>,
) -> Result<bool> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Ok(true);
    }
    Ok(reachable_avoiding(g, s, forbidden, Direction::Forward).contains(&t))
}

/// Minimum-weight `s`-`t` path; among minimum paths, the lexicographically
/// smallest vertex sequence.
pub fn shortest_path(
    g: &WeightedDigraph,
    s: Vertex,
    t: Vertex,
) -> Result<Option<(DirectedPath, Weight)>> {
    shortest_path_avoiding(g, s, t, &BTreeSet::new())
}

/// As [`shortest_path`], restricted to paths whose internal vertices avoid
/// `forbidden`.
pub fn shortest_path_avoiding(
    g: &WeightedDigraph,
    s: Vertex,
    t: Vertex,
    forbidden: &BTreeSet<Vertex>,
) -> Result<Option<(DirectedPath, Weight)>> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Ok(Some((DirectedPath::trivial(s), Weight::ZERO)));
    }
    // distances to t, only passing through admissible vertices
    let passable = |v: Vertex| v == t || !forbidden.contains(&v);
    let mut dist: BTreeMap<Vertex, Weight> = BTreeMap::from([(t, Weight::ZERO)]);
    let mut heap = BinaryHeap::from([(Reverse(Weight::ZERO), Reverse(t))]);
    while let Some((Reverse(d), Reverse(x))) = heap.pop() {
        if dist.get(&x).is_some_and(|&best| best < d) || !passable(x) || x == s {
            continue;
        }
        for u in g.in_neighbors(x) {
            let nd = d + g.weight(u, x).unwrap();
            if dist.get(&u).is_none_or(|&cur| nd < cur) {
                dist.insert(u, nd);
                heap.push((Reverse(nd), Reverse(u)));
            }
        }
    }
    let Some(&total) = dist.get(&s) else {
        return Ok(None);
    };
    let mut walk = vec![s];
    let mut cur = s;
    while cur != t {
        let here = dist[&cur];
        let next = g
            .out_arcs(cur)
            .find(|&(v, w)| passable(v) && v != s && dist.get(&v).is_some_and(|&dv| dv + w == here))
            .map(|(v, _)| v)
            .expect("distance labels are consistent");
        walk.push(next);
        cur = next;
    }
    Ok(Some((DirectedPath::new(walk)?, total)))
}

/// Strongly connected components in topological order of the condensation.
/// Each component is sorted ascending.
pub fn strongly_connected_components(g: &WeightedDigraph) -> Vec<Vec<Vertex>> {
    struct Tarjan<'a> {
        g: &'a WeightedDigraph,
        index: BTreeMap<Vertex, usize>,
        low: BTreeMap<Vertex, usize>,
        stack: Vec<Vertex>,
        on_stack: BTreeSet<Vertex>,
        out: Vec<Vec<Vertex>>,
    }

    impl Tarjan<'_> {
        fn visit(&mut self, v: Vertex) {
            let i = self.index.len();
            self.index.insert(v, i);
            self.low.insert(v, i);
            self.stack.push(v);
            self.on_stack.insert(v);
            let succ: Vec<Vertex> = self.g.out_neighbors(v).collect();
            for w in succ {
                if !self.index.contains_key(&w) {
                    self.visit(w);
                    let lw = self.low[&w];
                    let lv = self.low.get_mut(&v).unwrap();
                    *lv = (*lv).min(lw);
                } else if self.on_stack.contains(&w) {
                    let iw = self.index[&w];
                    let lv = self.low.get_mut(&v).unwrap();
                    *lv = (*lv).min(iw);
                }
            }
            if self.low[&v] == self.index[&v] {
                let mut comp = Vec::new();
                loop {
                    let w = self.stack.pop().unwrap();
                    self.on_stack.remove(&w);
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                self.out.push(comp);
            }
        }
    }

    let mut t = Tarjan {
        g,
        index: BTreeMap::new(),
        low: BTreeMap::new(),
        stack: Vec::new(),
        on_stack: BTreeSet::new(),
        out: Vec::new(),
    };
    for v in g.vertices() {
        if !t.index.contains_key(&v) {
            t.visit(v);
        }
    }
    // Tarjan emits sinks first
    t.out.reverse();
    t.out
}

/// `sym(G)`: an edge `{u, v}` for every arc `uv` or `vu`.
pub fn underlying_undirected(g: &WeightedDigraph) -> UndirectedGraph {
    let mut u = UndirectedGraph::new();
    for v in g.vertices() {
        u.add_vertex(v);
    }
    for (a, b, _) in g.arcs() {
        u.add_edge(a, b);
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, arcs: &[(Vertex, Vertex)]) -> WeightedDigraph {
        WeightedDigraph::from_unit_arcs(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn reaches_respects_forbidden_internals() {
        let g = unit(3, &[(0, 1), (1, 2), (2, 0)]);
        let none = BTreeSet::new();
        assert!(reaches(&g, 1, 1, &BTreeSet::from([1])).unwrap());
        assert!(!reaches(&g, 0, 2, &BTreeSet::from([1])).unwrap());
        assert!(reaches(&g, 0, 2, &none).unwrap());
        // endpoints are exempt
        assert!(reaches(&g, 0, 1, &BTreeSet::from([0, 1])).unwrap());
        assert!(reaches(&g, 0, 9, &none).is_err());
        let chord = unit(3, &[(0, 1), (1, 2), (2, 0), (0, 2)]);
        assert!(reaches(&chord, 0, 2, &BTreeSet::from([1])).unwrap());
    }

    #[test]
    fn shortest_path_prefers_cheaper_then_lexicographic() {
        let g = WeightedDigraph::from_arcs(
            4,
            [
                (0, 1, Weight::integer(1)),
                (1, 3, Weight::integer(2)),
                (0, 2, Weight::integer(4)),
                (2, 3, Weight::integer(1)),
            ],
        )
        .unwrap();
        let (p, w) = shortest_path(&g, 0, 3).unwrap().unwrap();
        assert_eq!(p.vertices(), &[0, 1, 3]);
        assert_eq!(w, Weight::integer(3));

        let tie = unit(4, &[(0, 2), (2, 3), (0, 1), (1, 3)]);
        let (p, _) = shortest_path(&tie, 0, 3).unwrap().unwrap();
        assert_eq!(p.vertices(), &[0, 1, 3]);
        assert!(shortest_path(&tie, 3, 0).unwrap().is_none());
        let (p, w) = shortest_path(&tie, 2, 2).unwrap().unwrap();
        assert!(p.is_trivial() && w.is_zero());
    }

    #[test]
    fn shortest_path_avoiding_skips_forbidden() {
        let g = unit(4, &[(0, 1), (1, 3), (0, 2), (2, 1)]);
        // every 0->3 path passes through 1
        assert!(shortest_path_avoiding(&g, 0, 3, &BTreeSet::from([1])).unwrap().is_none());
        let (p, _) = shortest_path_avoiding(&g, 0, 1, &BTreeSet::from([2])).unwrap().unwrap();
        assert_eq!(p.vertices(), &[0, 1]);
    }

    #[test]
    fn scc_shapes() {
        let dag = unit(4, &[(0, 1), (1, 2), (0, 3)]);
        let comps = strongly_connected_components(&dag);
        assert_eq!(comps.len(), 4);
        assert_eq!(comps[0], vec![0]);
        let cycle = unit(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(strongly_connected_components(&cycle), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn sym_deduplicates_antiparallel_arcs() {
        let g = unit(2, &[(0, 1), (1, 0)]);
        let u = underlying_undirected(&g);
        assert_eq!(u.edge_count(), 1);
        assert!(u.has_edge(0, 1));
    }
}
