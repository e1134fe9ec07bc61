use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::dsn::{minimize, DsnInstance};
use crate::error::Result;
use crate::weight::Weight;

use super::{Compact, Engine, Outcome, SolveResult};

const FLOAT_SLACK: f64 = 1e-7;

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Free,
    In,
    Out,
}

trait Cost: Copy + PartialOrd + std::ops::Add<Output = Self> {
    const ZERO: Self;
}

impl Cost for f64 {
    const ZERO: f64 = 0.0;
}

impl Cost for Weight {
    const ZERO: Weight = Weight::ZERO;
}

struct Entry<T>(T, usize);

impl<T: PartialOrd> PartialEq for Entry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: PartialOrd> Eq for Entry<T> {}
impl<T: PartialOrd> PartialOrd for Entry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: PartialOrd> Ord for Entry<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .partial_cmp(&self.0)
            .unwrap_or(Ordering::Equal)
            .then(other.1.cmp(&self.1))
    }
}

struct Search<'a> {
    c: &'a Compact,
    state: Vec<State>,
    spent: Weight,
    integral: bool,
    best: Option<(Vec<usize>, Weight)>,
    cutoff: Option<Weight>,
    nodes: u64,
}

impl Search<'_> {
    fn usable(&self, a: usize) -> bool {
        self.state[a] != State::Out
    }

    fn reach(&self, from: usize, forward: bool, only_in: bool) -> Vec<bool> {
        let n = self.c.ids.len();
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            let adj = if forward { &self.c.out[x] } else { &self.c.inc[x] };
            for &a in adj {
                let ok = if only_in { self.state[a] == State::In } else { self.usable(a) };
                if !ok {
                    continue;
                }
                let (u, v, _) = self.c.arcs[a];
                let y = if forward { v } else { u };
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Dijkstra from `s` to `t` over the arcs flagged in `allowed`; included
    /// arcs are free. Returns the distance and the arcs of one shortest path.
    fn dijkstra<T: Cost>(
        &self,
        s: usize,
        t: usize,
        allowed: &[bool],
        weight: impl Fn(usize) -> T,
    ) -> Option<(T, Vec<usize>)> {
        let n = self.c.ids.len();
        let mut dist: Vec<Option<T>> = vec![None; n];
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[s] = Some(T::ZERO);
        heap.push(Entry(T::ZERO, s));
        while let Some(Entry(d, x)) = heap.pop() {
            if done[x] {
                continue;
            }
            done[x] = true;
            if x == t {
                break;
            }
            for &a in &self.c.out[x] {
                if !allowed[a] {
                    continue;
                }
                let y = self.c.arcs[a].1;
                let w = if self.state[a] == State::In { T::ZERO } else { weight(a) };
                let nd = d + w;
                if dist[y].is_none_or(|old| nd < old) {
                    dist[y] = Some(nd);
                    pred[y] = Some(a);
                    heap.push(Entry(nd, y));
                }
            }
        }
        let total = dist[t]?;
        let mut path = Vec::new();
        let mut cur = t;
        while let Some(a) = pred[cur] {
            path.push(a);
            cur = self.c.arcs[a].0;
            if cur == s {
                break;
            }
        }
        Some((total, path))
    }

    fn hopeless(&self, exact: Weight, float: f64) -> bool {
        if let Some((_, b)) = &self.best {
            if exact >= *b {
                return true;
            }
            let b = b.to_f64();
            if self.integral && (float - FLOAT_SLACK).ceil() >= b {
                return true;
            }
            if float - FLOAT_SLACK * (1.0 + b.abs()) >= b {
                return true;
            }
        }
        if let Some(c) = self.cutoff {
            if exact > c {
                return true;
            }
            let cf = c.to_f64();
            if self.integral && (float - FLOAT_SLACK).ceil() > cf {
                return true;
            }
            if float - FLOAT_SLACK * (1.0 + cf.abs()) > cf {
                return true;
            }
        }
        false
    }

    fn record(&mut self) {
        let better = self.best.as_ref().is_none_or(|(_, b)| self.spent < *b)
            && self.cutoff.is_none_or(|c| self.spent <= c);
        if better {
            let chosen = (0..self.state.len()).filter(|&a| self.state[a] == State::In).collect();
            self.best = Some((chosen, self.spent));
        }
    }

    fn explore(&mut self) {
        self.nodes += 1;
        let m = self.c.arcs.len();
        let mut open = Vec::new();
        let mut cache: Vec<Option<Vec<bool>>> = vec![None; self.c.ids.len()];
        for &(s, t) in &self.c.requests {
            if cache[s].is_none() {
                cache[s] = Some(self.reach(s, true, true));
            }
            if !cache[s].as_ref().unwrap()[t] {
                open.push((s, t));
            }
        }
        if open.is_empty() {
            self.record();
            return;
        }

        let mut share = vec![0u32; m];
        let mut masks = Vec::with_capacity(open.len());
        for &(s, t) in &open {
            let fwd = self.reach(s, true, false);
            if !fwd[t] {
                return;
            }
            let bwd = self.reach(t, false, false);
            let mask: Vec<bool> = (0..m)
                .map(|a| {
                    let (u, v, _) = self.c.arcs[a];
                    self.usable(a) && fwd[u] && bwd[v]
                })
                .collect();
            for a in 0..m {
                if mask[a] && self.state[a] == State::Free {
                    share[a] += 1;
                }
            }
            masks.push(mask);
        }

        let mut longest = Weight::ZERO;
        let mut shared = 0.0f64;
        let mut branch_path = Vec::new();
        for (i, &(s, t)) in open.iter().enumerate() {
            let (d, path) = self
                .dijkstra(s, t, &masks[i], |a| self.c.arcs[a].2)
                .expect("target reachable");
            if i == 0 {
                branch_path = path;
            }
            if d > longest {
                longest = d;
            }
            let (f, _) = self
                .dijkstra(s, t, &masks[i], |a| self.c.arcs[a].2.to_f64() / share[a] as f64)
                .expect("target reachable");
            shared += f;
        }
        if self.hopeless(self.spent + longest, self.spent.to_f64() + shared) {
            return;
        }

        let arc = branch_path
            .into_iter()
            .filter(|&a| self.state[a] == State::Free)
            .min()
            .expect("an open request needs a free arc");
        let w = self.c.arcs[arc].2;
        self.state[arc] = State::In;
        self.spent += w;
        self.explore();
        self.spent = self.spent - w;
        self.state[arc] = State::Out;
        self.explore();
        self.state[arc] = State::Free;
    }
}

fn run(inst: &DsnInstance, cutoff: Option<Weight>) -> Result<SolveResult> {
    let c = Compact::new(inst);
    let mut search = Search {
        c: &c,
        state: vec![State::Free; c.arcs.len()],
        spent: Weight::ZERO,
        integral: inst.host().all_weights_integer(),
        best: None,
        cutoff,
        nodes: 0,
    };
    if let Some((arcs, w)) = greedy_upper_bound(&search, inst)? {
        if cutoff.is_none_or(|c| w <= c) {
            search.best = Some((arcs, w));
        }
    }
    search.explore();
    let nodes = search.nodes;
    Ok(match search.best {
        Some((arcs, _)) => SolveResult::optimal(Engine::Bnb, c.solution(inst, arcs.into_iter()), nodes),
        None => SolveResult::infeasible(Engine::Bnb, nodes),
    })
}

/// Union of successive shortest paths with earlier paths made free, then
/// minimized.
fn greedy_upper_bound(search: &Search<'_>, inst: &DsnInstance) -> Result<Option<(Vec<usize>, Weight)>> {
    let c = search.c;
    let all = vec![true; c.arcs.len()];
    let mut taken = vec![false; c.arcs.len()];
    for &(s, t) in &c.requests {
        let found = search.dijkstra(s, t, &all, |a| if taken[a] { Weight::ZERO } else { c.arcs[a].2 });
        match found {
            Some((_, path)) => path.into_iter().for_each(|a| taken[a] = true),
            None => return Ok(None),
        }
    }
    let sol = c.solution(inst, (0..c.arcs.len()).filter(|&a| taken[a]));
    let sol = minimize(inst, &sol)?;
    let kept = sol.arcs();
    let chosen: Vec<usize> = (0..c.arcs.len()).filter(|&a| kept.contains(&c.host_arc(a))).collect();
    Ok(Some((chosen, crate::dsn::cost(&sol))))
}

/// Branch and bound over arcs. Each node is bounded by the larger of the
/// longest single-request shortest path and a fractional bound in which
/// every free arc's weight is split among the open requests that could
/// route through it.
pub fn solve_bnb(inst: &DsnInstance) -> Result<SolveResult> {
    run(inst, None)
}

/// Like [`solve_bnb`] but only looks for solutions of cost at most
/// `cutoff`; reports infeasible when none exists.
pub fn solve_bnb_within(inst: &DsnInstance, cutoff: Weight) -> Result<SolveResult> {
    let mut r = run(inst, Some(cutoff))?;
    if matches!(r.outcome, Outcome::Infeasible) {
        r.proven_optimal = true;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedDigraph;
    use crate::solvers::solve_exhaustive;

    #[test]
    fn empty_request_set() {
        let g = WeightedDigraph::from_unit_arcs(2, [(0, 1)]).unwrap();
        let r = solve_bnb(&DsnInstance::new(g, []).unwrap()).unwrap();
        assert_eq!(r.cost(), Some(Weight::ZERO));
    }

    #[test]
    fn shared_arc_is_paid_once() {
        // 0 -> 1 is shared by both requests; the private routes cost 3 each
        let arcs = [
            (0, 1, Weight::integer(2)),
            (1, 2, Weight::ONE),
            (1, 3, Weight::ONE),
            (0, 2, Weight::integer(3)),
            (0, 3, Weight::integer(3)),
        ];
        let g = WeightedDigraph::from_arcs(4, arcs).unwrap();
        let inst = DsnInstance::new(g, [(0, 2), (0, 3)]).unwrap();
        let r = solve_bnb(&inst).unwrap();
        assert_eq!(r.cost(), Some(Weight::integer(4)));
        assert_eq!(r.cost(), solve_exhaustive(&inst).unwrap().cost());
    }

    #[test]
    fn cutoff_search() {
        let g = WeightedDigraph::from_unit_arcs(3, [(0, 1), (1, 2)]).unwrap();
        let inst = DsnInstance::new(g, [(0, 2)]).unwrap();
        assert!(!solve_bnb_within(&inst, Weight::ONE).unwrap().is_feasible());
        assert_eq!(solve_bnb_within(&inst, Weight::integer(2)).unwrap().cost(), Some(Weight::integer(2)));
    }

    #[test]
    fn infeasible() {
        let g = WeightedDigraph::from_unit_arcs(3, [(1, 0)]).unwrap();
        let inst = DsnInstance::new(g, [(0, 1)]).unwrap();
        assert!(!solve_bnb(&inst).unwrap().is_feasible());
    }
}
