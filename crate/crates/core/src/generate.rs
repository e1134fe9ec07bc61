//! Seeded instance generators. Equal arguments always give equal instances.

use std::collections::BTreeSet;

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsn::{cycle_requests, DsnInstance};
use crate::error::{Error, Result};
use crate::graph::{Arc, Vertex, WeightedDigraph};
use crate::structure::{make_ladder, LadderSpec};
use crate::weight::Weight;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_weight(rng: &mut ChaCha8Rng) -> Weight {
    let denom = [1, 1, 1, 2, 3][rng.gen_range(0..5)];
    Weight::new(rng.gen_range(1..=4 * denom), denom)
}

/// `m` distinct random arcs on `n` vertices with small positive rational
/// weights.
pub fn random_digraph(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<WeightedDigraph> {
    let pairs: Vec<Arc> = (0..n as Vertex)
        .flat_map(|u| (0..n as Vertex).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    if m > pairs.len() {
        return Err(Error::input(format!("{m} arcs do not fit on {n} vertices")));
    }
    let mut chosen = pairs.choose_multiple(rng, m).copied().collect::<Vec<_>>();
    chosen.sort_unstable();
    let mut g = WeightedDigraph::with_vertices(n);
    for (u, v) in chosen {
        let w = random_weight(rng);
        g.add_arc(u, v, w)?;
    }
    Ok(g)
}

/// Random host plus `p` distinct requests among `q` random terminals.
/// Terminals left out of every request are dropped, so `q` is an upper
/// bound on the terminal count.
pub fn random_instance(n: usize, m: usize, q: usize, p: usize, seed: u64) -> Result<DsnInstance> {
    if q < 2 || q > n {
        return Err(Error::input(format!("need 2 <= q <= n, got q = {q}, n = {n}")));
    }
    let mut rng = rng(seed);
    let host = random_digraph(n, m, &mut rng)?;
    let terminals: Vec<Vertex> = (0..n as Vertex).choose_multiple(&mut rng, q);
    let pairs: Vec<Arc> = terminals
        .iter()
        .flat_map(|&s| terminals.iter().filter(move |&&t| t != s).map(move |&t| (s, t)))
        .collect();
    let p = p.min(pairs.len());
    let requests: BTreeSet<Arc> = pairs.choose_multiple(&mut rng, p).copied().collect();
    DsnInstance::new(host, requests)
}

/// Random host whose requests are an out-star from a random root to
/// `leaves` other vertices.
pub fn random_out_star(n: usize, m: usize, leaves: usize, seed: u64) -> Result<DsnInstance> {
    if leaves == 0 || leaves >= n {
        return Err(Error::input(format!("need 1 <= leaves < n, got {leaves}")));
    }
    let mut rng = rng(seed);
    let host = random_digraph(n, m, &mut rng)?;
    let mut picked: Vec<Vertex> = (0..n as Vertex).choose_multiple(&mut rng, leaves + 1);
    picked.shuffle(&mut rng);
    let root = picked[0];
    DsnInstance::new(host, picked[1..].iter().map(|&t| (root, t)))
}

/// Bidirected `w x h` grid with unit weights; `q` random terminals are
/// requested around a directed cycle.
pub fn grid_instance(w: usize, h: usize, q: usize, seed: u64) -> Result<DsnInstance> {
    if q < 2 || q > w * h {
        return Err(Error::input(format!("need 2 <= q <= {}, got {q}", w * h)));
    }
    let mut g = WeightedDigraph::with_vertices(w * h);
    for y in 0..h {
        for x in 0..w {
            let v = (y * w + x) as Vertex;
            if x + 1 < w {
                g.add_arc(v, v + 1, Weight::ONE)?;
                g.add_arc(v + 1, v, Weight::ONE)?;
            }
            if y + 1 < h {
                g.add_arc(v, v + w as Vertex, Weight::ONE)?;
                g.add_arc(v + w as Vertex, v, Weight::ONE)?;
            }
        }
    }
    let mut rng = rng(seed);
    let mut terminals: Vec<Vertex> = (0..(w * h) as Vertex).choose_multiple(&mut rng, q);
    terminals.sort_unstable();
    DsnInstance::new(g, cycle_requests(&terminals))
}

/// `G_{n,I}` with requests strongly connecting its corners, in the cycle
/// order `a_1, b_1, a_n, b_n`.
pub fn ladder_instance(spec: &LadderSpec) -> Result<DsnInstance> {
    let n = spec.n;
    let order = [spec.a(1), spec.b(1), spec.a(n), spec.b(n)];
    DsnInstance::new(make_ladder(spec), cycle_requests(&order))
}

/// `G_{n,I}` with four fresh terminals attached as `x1 -> a`, `b -> x2`,
/// `x3 -> c`, `d -> x4`, and requests `x1 -> x4`, `x3 -> x2`. The whole
/// host is an inclusion-minimal solution in which the ladder interior
/// holds no terminal.
pub fn framed_ladder_instance(spec: &LadderSpec) -> Result<DsnInstance> {
    let mut g = make_ladder(spec);
    let c = spec.corners();
    let x = g.fresh_vertex();
    for v in x..x + 4 {
        g.add_vertex(v);
    }
    g.add_arc(x, c.a, Weight::ONE)?;
    g.add_arc(c.b, x + 1, Weight::ONE)?;
    g.add_arc(x + 2, c.c, Weight::ONE)?;
    g.add_arc(c.d, x + 3, Weight::ONE)?;
    DsnInstance::new(g, [(x, x + 3), (x + 2, x + 1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_instance(8, 15, 4, 3, 7).unwrap(), random_instance(8, 15, 4, 3, 7).unwrap());
        assert_eq!(random_out_star(8, 15, 3, 9).unwrap(), random_out_star(8, 15, 3, 9).unwrap());
        assert_eq!(grid_instance(4, 4, 3, 1).unwrap(), grid_instance(4, 4, 3, 1).unwrap());
    }

    #[test]
    fn shapes() {
        let inst = random_instance(8, 20, 4, 3, 1).unwrap();
        assert_eq!(inst.host().arc_count(), 20);
        assert_eq!(inst.request_count(), 3);
        assert!(inst.terminal_count() <= 4);
        let star = random_out_star(10, 20, 4, 2).unwrap();
        assert!(star.out_star_root().is_some());
        assert_eq!(star.request_count(), 4);
        let grid = grid_instance(4, 4, 3, 0).unwrap();
        assert_eq!(grid.host().arc_count(), 48);
        assert_eq!(grid.request_count(), 3);
    }
}
