use std::collections::BTreeMap;

use crate::dsn::DsnInstance;
use crate::error::{Error, Result};
use crate::weight::Weight;

use super::{Compact, Engine, SolveResult};

pub const EXHAUSTIVE_ARC_CAP: usize = 24;

struct Search<'a> {
    tails: Vec<u64>,
    heads: Vec<u64>,
    weights: &'a [Weight],
    requests: Vec<(u64, u64)>,
    best: Option<(u32, Weight)>,
    nodes: u64,
}

impl Search<'_> {
    fn closure(&self, mask: u32, from: u64) -> u64 {
        let mut reach = from;
        loop {
            let mut next = reach;
            let mut bits = mask;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if reach & self.tails[i] != 0 {
                    next |= self.heads[i];
                }
            }
            if next == reach {
                return reach;
            }
            reach = next;
        }
    }

    fn satisfies(&self, mask: u32) -> bool {
        let mut cache: BTreeMap<u64, u64> = BTreeMap::new();
        self.requests.iter().all(|&(s, t)| {
            let reach = *cache.entry(s).or_insert_with(|| self.closure(mask, s));
            reach & t != 0
        })
    }

    fn dfs(&mut self, idx: usize, chosen: u32, spent: Weight) {
        self.nodes += 1;
        if let Some((_, b)) = self.best {
            if spent >= b {
                return;
            }
        }
        if self.satisfies(chosen) {
            self.best = Some((chosen, spent));
            return;
        }
        let m = self.tails.len();
        if idx == m {
            return;
        }
        let rest = ((1u32 << m) - 1) & !((1u32 << idx) - 1);
        if !self.satisfies(chosen | rest) {
            return;
        }
        self.dfs(idx + 1, chosen | (1 << idx), spent + self.weights[idx]);
        self.dfs(idx + 1, chosen, spent);
    }
}

/// Ground-truth solver: a depth-first walk over every arc subset, in/out per
/// arc in ascending order, cut off once the partial cost reaches the
/// incumbent or the remaining arcs cannot satisfy all requests.
pub fn solve_exhaustive(inst: &DsnInstance) -> Result<SolveResult> {
    let m = inst.host().arc_count();
    if m > EXHAUSTIVE_ARC_CAP {
        return Err(Error::Capacity {
            what: "arc count for exhaustive search",
            limit: EXHAUSTIVE_ARC_CAP,
            actual: m,
        });
    }
    let c = Compact::new(inst);
    let mut local: BTreeMap<usize, u32> = BTreeMap::new();
    for &(u, v, _) in &c.arcs {
        for x in [u, v] {
            let next = local.len() as u32;
            local.entry(x).or_insert(next);
        }
    }
    let bit = |x: usize| local.get(&x).map(|&i| 1u64 << i);
    let mut requests = Vec::new();
    for &(s, t) in &c.requests {
        match (bit(s), bit(t)) {
            (Some(s), Some(t)) => requests.push((s, t)),
            _ => return Ok(SolveResult::infeasible(Engine::Exhaustive, 0)),
        }
    }
    let weights: Vec<Weight> = c.arcs.iter().map(|a| a.2).collect();
    let mut search = Search {
        tails: c.arcs.iter().map(|a| bit(a.0).unwrap()).collect(),
        heads: c.arcs.iter().map(|a| bit(a.1).unwrap()).collect(),
        weights: &weights,
        requests,
        best: None,
        nodes: 0,
    };
    search.dfs(0, 0, Weight::ZERO);
    Ok(match search.best {
        Some((mask, _)) => {
            let chosen = (0..m).filter(|i| mask & (1 << i) != 0);
            SolveResult::optimal(Engine::Exhaustive, c.solution(inst, chosen), search.nodes)
        }
        None => SolveResult::infeasible(Engine::Exhaustive, search.nodes),
    })
}
