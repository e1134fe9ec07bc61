use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use crate::dsn::DsnInstance;
use crate::error::{Error, Result};
use crate::weight::Weight;

use super::{Compact, Engine, SolveResult};

/// Terminal count (root excluded) above which the table would not fit.
const DST_TERMINAL_CAP: usize = 16;

#[derive(Clone, Copy)]
enum Choice {
    Leaf,
    Split { at: usize, part: usize },
}

/// Single-source distances and predecessor arcs over the compact graph.
fn dijkstra(c: &Compact, s: usize) -> (Vec<Option<Weight>>, Vec<Option<usize>>) {
    let n = c.ids.len();
    let mut dist = vec![None; n];
    let mut pred = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[s] = Some(Weight::ZERO);
    heap.push(Reverse((Weight::ZERO, s)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if dist[x].is_some_and(|old| d > old) {
            continue;
        }
        for &a in &c.out[x] {
            let (_, y, w) = c.arcs[a];
            let nd = d + w;
            if dist[y].is_none_or(|old| nd < old) {
                dist[y] = Some(nd);
                pred[y] = Some(a);
                heap.push(Reverse((nd, y)));
            }
        }
    }
    (dist, pred)
}

/// Optimum directed Steiner tree for out-star requests `r -> t`.
///
/// `dp[S][v]` is the cheapest arborescence rooted at `v` reaching every
/// terminal in `S`. A tree rooted at `v` first runs a shortest path to the
/// vertex `u` where it branches, then splits `S` into two non-empty parts
/// served by subtrees rooted at `u`; a single terminal is reached by a
/// shortest path.
pub fn solve_dst(inst: &DsnInstance) -> Result<SolveResult> {
    if inst.requests().is_empty() {
        return Ok(SolveResult::optimal(Engine::Dst, Default::default(), 0));
    }
    let root = inst.out_star_root().ok_or_else(|| {
        Error::domain("requests are not an out-star from a single root; use the bnb engine")
    })?;
    let c = Compact::new(inst);
    let index = |v| c.ids.binary_search(&v).expect("terminal in host");
    let r = index(root);
    let terms: Vec<usize> = inst
        .requests()
        .iter()
        .map(|&(_, t)| index(t))
        .collect();
    let k = terms.len();
    if k > DST_TERMINAL_CAP {
        return Err(Error::Capacity {
            what: "terminal count for the Dreyfus-Wagner program",
            limit: DST_TERMINAL_CAP,
            actual: k,
        });
    }
    let n = c.ids.len();
    let apsp: Vec<_> = (0..n).map(|v| dijkstra(&c, v)).collect();
    let dist = |v: usize, u: usize| apsp[v].0[u];

    let full = (1usize << k) - 1;
    let mut dp: Vec<Vec<Option<(Weight, Choice)>>> = vec![vec![None; n]; full + 1];
    let mut nodes = 0u64;
    for (i, &t) in terms.iter().enumerate() {
        for (v, slot) in dp[1 << i].iter_mut().enumerate() {
            *slot = dist(v, t).map(|d| (d, Choice::Leaf));
        }
    }
    for set in 1..=full {
        if set.count_ones() < 2 {
            continue;
        }
        let mut merged: Vec<Option<(Weight, usize)>> = vec![None; n];
        for (u, slot) in merged.iter_mut().enumerate() {
            let mut part = (set - 1) & set;
            while part > 0 {
                if part < set ^ part {
                    part = (part - 1) & set;
                    continue;
                }
                nodes += 1;
                if let (Some((x, _)), Some((y, _))) = (dp[part][u], dp[set ^ part][u]) {
                    let total = x + y;
                    if slot.is_none_or(|(old, _)| total < old) {
                        *slot = Some((total, part));
                    }
                }
                part = (part - 1) & set;
            }
        }
        for (v, cell) in dp[set].iter_mut().enumerate() {
            let mut best: Option<(Weight, Choice)> = None;
            for (u, m) in merged.iter().enumerate() {
                if let (Some(d), Some((w, part))) = (dist(v, u), m) {
                    let total = d + *w;
                    if best.is_none_or(|(old, _)| total < old) {
                        best = Some((total, Choice::Split { at: u, part: *part }));
                    }
                }
            }
            *cell = best;
        }
    }

    if dp[full][r].is_none() {
        return Ok(SolveResult::infeasible(Engine::Dst, nodes));
    }
    let mut arcs = BTreeSet::new();
    let mut stack = vec![(full, r)];
    let push_path = |from: usize, to: usize, arcs: &mut BTreeSet<usize>| {
        let pred = &apsp[from].1;
        let mut cur = to;
        while cur != from {
            let a = pred[cur].expect("reachable");
            arcs.insert(a);
            cur = c.arcs[a].0;
        }
    };
    while let Some((set, v)) = stack.pop() {
        match dp[set][v].expect("reachable state").1 {
            Choice::Leaf => {
                let t = terms[set.trailing_zeros() as usize];
                push_path(v, t, &mut arcs);
            }
            Choice::Split { at, part } => {
                push_path(v, at, &mut arcs);
                stack.push((part, at));
                stack.push((set ^ part, at));
            }
        }
    }
    Ok(SolveResult::optimal(Engine::Dst, c.solution(inst, arcs.into_iter()), nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedDigraph;
    use crate::solvers::solve_exhaustive;

    #[test]
    fn two_terminals_is_a_shortest_path() {
        let g = WeightedDigraph::from_unit_arcs(4, [(0, 1), (1, 3), (0, 2), (2, 3), (0, 3)]).unwrap();
        let inst = DsnInstance::new(g, [(0, 3)]).unwrap();
        assert_eq!(solve_dst(&inst).unwrap().cost(), Some(Weight::ONE));
    }

    #[test]
    fn shared_prefix_counted_once() {
        let g = WeightedDigraph::from_arcs(
            7,
            [
                (0, 1, Weight::ONE),
                (1, 2, Weight::ONE),
                (2, 3, Weight::ONE),
                (2, 4, Weight::ONE),
                (0, 5, Weight::integer(2)),
                (5, 3, Weight::integer(2)),
                (0, 6, Weight::integer(2)),
                (6, 4, Weight::integer(2)),
            ],
        )
        .unwrap();
        let inst = DsnInstance::new(g, [(0, 3), (0, 4)]).unwrap();
        let r = solve_dst(&inst).unwrap();
        assert_eq!(r.cost(), Some(Weight::integer(4)));
        assert_eq!(r.cost(), solve_exhaustive(&inst).unwrap().cost());
    }

    #[test]
    fn non_star_is_a_domain_error() {
        let g = WeightedDigraph::from_unit_arcs(3, [(0, 1), (1, 2)]).unwrap();
        let inst = DsnInstance::new(g, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(solve_dst(&inst), Err(Error::Domain(_))));
    }
}
