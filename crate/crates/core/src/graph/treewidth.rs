use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{UndirectedGraph, Vertex};
use crate::error::{Error, Result};

/// Largest graph accepted by [`treewidth_exact`].
pub const TREEWIDTH_EXACT_CAP: usize = 22;

/// A width together with an elimination order attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Treewidth {
    pub width: usize,
    pub order: Vec<Vertex>,
}

struct Dense {
    ids: Vec<Vertex>,
    adj: Vec<u32>,
}

impl Dense {
    fn new(g: &UndirectedGraph) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = ids
            .iter()
            .map(|&v| g.neighbors(v).fold(0u32, |m, u| m | 1 << index[&u]))
            .collect();
        Dense { ids, adj }
    }

    fn neighborhood(&self, set: u32) -> u32 {
        let mut out = 0;
        let mut rest = set;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= self.adj[i];
            rest &= rest - 1;
        }
        out
    }

    /// Vertices outside `eliminated ∪ {v}` reachable from `v` through
    /// `eliminated`: the neighbourhood of `v` at the moment it is eliminated.
    fn q(&self, eliminated: u32, v: usize) -> u32 {
        let mut reach = 1u32 << v;
        loop {
            let grow = self.neighborhood(reach) & eliminated & !reach;
            if grow == 0 {
                break;
            }
            reach |= grow;
        }
        self.neighborhood(reach) & !eliminated & !(1 << v)
    }
}

/// Degeneracy, a lower bound on treewidth.
fn degeneracy(d: &Dense) -> usize {
    let n = d.ids.len();
    let mut alive: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut best = 0;
    while alive != 0 {
        let (v, deg) = (0..n)
            .filter(|&i| alive >> i & 1 == 1)
            .map(|i| (i, (d.adj[i] & alive).count_ones() as usize))
            .min_by_key(|&(_, deg)| deg)
            .unwrap();
        best = best.max(deg);
        alive &= !(1 << v);
    }
    best
}

/// Exact treewidth by dynamic programming over sets of eliminated vertices.
///
/// States whose width already reaches the min-fill upper bound are pruned.
/// Graphs above [`TREEWIDTH_EXACT_CAP`] vertices are rejected.
pub fn treewidth_exact(g: &UndirectedGraph) -> Result<Treewidth> {
    let n = g.vertex_count();
    if n > TREEWIDTH_EXACT_CAP {
        return Err(Error::Capacity {
            what: "vertex count for exact treewidth",
            limit: TREEWIDTH_EXACT_CAP,
            actual: n,
        });
    }
    let upper = treewidth_upper_bound(g);
    if n <= 1 {
        return Ok(upper);
    }
    let d = Dense::new(g);
    if degeneracy(&d) >= upper.width {
        return Ok(upper);
    }
    let full: u32 = (1u32 << n) - 1;
    let mut best_width = upper.width;
    let mut best: Option<(usize, u32)> = None; // (level, set) whose completion is optimal

    // levels[k]: eliminated set of size k -> (width so far, last eliminated)
    let mut levels: Vec<HashMap<u32, (usize, usize)>> = vec![HashMap::from([(0, (0, usize::MAX))])];
    for size in 0..n {
        let mut next: HashMap<u32, (usize, usize)> = HashMap::new();
        for (&set, &(width, _)) in &levels[size] {
            let remaining = n - size;
            // eliminating everything left in any order costs at most remaining - 1
            let finish = width.max(remaining - 1);
            if finish < best_width {
                best_width = finish;
                best = Some((size, set));
            }
            for v in 0..n {
                if set >> v & 1 == 1 {
                    continue;
                }
                let w = width.max(d.q(set, v).count_ones() as usize);
                if w >= best_width {
                    continue;
                }
                let key = set | 1 << v;
                match next.get(&key) {
                    Some(&(cur, _)) if cur <= w => {}
                    _ => {
                        next.insert(key, (w, v));
                    }
                }
            }
        }
        levels.push(next);
        if levels[size + 1].is_empty() {
            break;
        }
    }
    if let Some(&(w, _)) = levels.get(n).and_then(|l| l.get(&full)) {
        if w < best_width || best.is_none() {
            best_width = w;
            best = Some((n, full));
        }
    }
    let Some((level, set)) = best else {
        return Ok(upper);
    };
    let mut order = Vec::new();
    let mut cur = set;
    for k in (1..=level).rev() {
        let (_, v) = levels[k][&cur];
        order.push(v);
        cur &= !(1 << v);
    }
    order.reverse();
    order.extend((0..n).filter(|&v| set >> v & 1 == 0));
    Ok(Treewidth {
        width: best_width,
        order: order.into_iter().map(|i| d.ids[i]).collect(),
    })
}

/// Width of the greedy min-fill elimination order (ties: lower degree, then
/// smaller id). Never below the exact treewidth.
pub fn treewidth_upper_bound(g: &UndirectedGraph) -> Treewidth {
    let mut h = g.clone();
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut width = 0;
    while h.vertex_count() > 0 {
        let v = h
            .vertices()
            .min_by_key(|&v| {
                let ns: Vec<Vertex> = h.neighbors(v).collect();
                let mut fill = 0usize;
                for (i, &a) in ns.iter().enumerate() {
                    for &b in &ns[i + 1..] {
                        if !h.has_edge(a, b) {
                            fill += 1;
                        }
                    }
                }
                (fill, ns.len(), v)
            })
            .unwrap();
        let ns: Vec<Vertex> = h.neighbors(v).collect();
        width = width.max(ns.len());
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                h.add_edge(a, b);
            }
        }
        h.remove_vertex(v);
        order.push(v);
    }
    Treewidth { width, order }
}

/// Width of a given elimination order.
pub fn elimination_width(g: &UndirectedGraph, order: &[Vertex]) -> usize {
    let mut h = g.clone();
    let mut width = 0;
    for &v in order {
        let ns: Vec<Vertex> = h.neighbors(v).collect();
        width = width.max(ns.len());
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                h.add_edge(a, b);
            }
        }
        h.remove_vertex(v);
    }
    width
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        assert_eq!(treewidth_exact(&UndirectedGraph::path(6)).unwrap().width, 1);
        assert_eq!(treewidth_exact(&UndirectedGraph::cycle(7)).unwrap().width, 2);
        for k in 1..=7 {
            let g = UndirectedGraph::complete(k);
            assert_eq!(treewidth_exact(&g).unwrap().width, k - 1);
            assert_eq!(treewidth_upper_bound(&g).width, k - 1);
        }
        let star = UndirectedGraph::from_edges(5, (1..5).map(|v| (0, v)));
        assert_eq!(treewidth_exact(&star).unwrap().width, 1);
    }

    #[test]
    fn grid_four_by_four() {
        let g = UndirectedGraph::grid(4, 4);
        let exact = treewidth_exact(&g).unwrap();
        assert_eq!(exact.width, 4);
        assert_eq!(elimination_width(&g, &exact.order), 4);
        let ub = treewidth_upper_bound(&g).width;
        assert!((4..=6).contains(&ub));
    }

    #[test]
    fn witness_order_attains_width() {
        let g = UndirectedGraph::grid(3, 5);
        let tw = treewidth_exact(&g).unwrap();
        assert_eq!(tw.width, 3);
        assert_eq!(tw.order.len(), 15);
        assert_eq!(elimination_width(&g, &tw.order), tw.width);
    }

    #[test]
    fn cap_is_enforced() {
        let g = UndirectedGraph::path(TREEWIDTH_EXACT_CAP + 1);
        assert!(matches!(treewidth_exact(&g), Err(Error::Capacity { .. })));
    }
}
