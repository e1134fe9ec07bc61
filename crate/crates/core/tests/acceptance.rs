//! One line per acceptance criterion. Runs without the libtest harness so
//! that the lines always reach the terminal.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::IteratorRandom;
use rand::Rng;

use steinernet::dsn::{
    cost, cycle_requests, is_inclusion_minimal, minimize, normalize_requests, reverse, reverse_solution, validate,
};
use steinernet::generate::{framed_ladder_instance, grid_instance, ladder_instance, random_instance, random_out_star, rng};
use steinernet::graph::{reaches, underlying_undirected, UndirectedGraph};
use steinernet::reduction::corpus::{pattern_corpus, psi_corpus};
use steinernet::reduction::{build_labelling, decide_psi, reduce, solve_psi_bruteforce};
use steinernet::solvers::{solve_bnb, solve_dst, solve_exhaustive, solve_with_certificate};
use steinernet::structure::{
    analyse_paths, is_ladder_subdivision, is_ladder_undirected, ladder_two_path_decomposition, make_ladder,
    protrusion_replace, reduce_length, LadderSpec, Side,
};
use steinernet::{DsnInstance, SolutionSubgraph, Vertex, Weight, WeightedDigraph};

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: steinernet::Error) -> String {
    e.to_string()
}

/// Random instances with n <= 8, m <= 20, q <= 4.
fn random_corpus() -> Vec<(u64, DsnInstance)> {
    (0..240u64)
        .map(|seed| {
            let n = 4 + (seed % 5) as usize;
            let m = (8 + (seed % 13) as usize).min(n * (n - 1));
            let q = 2 + (seed % 3) as usize;
            let p = 1 + (seed / 3 % 4) as usize;
            (seed, random_instance(n, m, q, p, seed).unwrap())
        })
        .collect()
}

/// Out-star instances with n <= 10 and at most five terminals.
fn out_star_corpus() -> Vec<(u64, DsnInstance)> {
    (0..120u64)
        .map(|seed| {
            let n = 5 + (seed % 6) as usize;
            let m = (10 + (seed % 13) as usize).min(n * (n - 1));
            let leaves = 1 + (seed % 4) as usize;
            (seed, random_out_star(n, m, leaves, seed).unwrap())
        })
        .collect()
}

fn grid_corpus() -> Vec<(String, DsnInstance)> {
    let mut out = Vec::new();
    for (w, h) in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)] {
        for q in 2..=4usize {
            for seed in 0..4u64 {
                if q <= w * h {
                    out.push((format!("grid {w}x{h} q={q} seed={seed}"), grid_instance(w, h, q, seed).unwrap()));
                }
            }
        }
    }
    out
}

fn optimum(inst: &DsnInstance) -> Result<Option<SolutionSubgraph>, String> {
    let res = solve_bnb(inst).map_err(err)?;
    match res.solution() {
        Some(sol) => Ok(Some(minimize(inst, sol).map_err(err)?)),
        None => Ok(None),
    }
}

fn criterion_1() -> Outcome {
    let corpus = random_corpus();
    let mut feasible = 0;
    for (seed, inst) in &corpus {
        let b = solve_bnb(inst).map_err(err)?;
        let e = solve_exhaustive(inst).map_err(err)?;
        ensure(b.cost() == e.cost(), || format!("seed {seed}: bnb {:?} vs exhaustive {:?}", b.cost(), e.cost()))?;
        feasible += usize::from(b.is_feasible());
    }
    Ok(format!("{} instances, {feasible} feasible, all costs equal", corpus.len()))
}

fn criterion_2() -> Outcome {
    let corpus = out_star_corpus();
    for (seed, inst) in &corpus {
        let d = solve_dst(inst).map_err(err)?;
        let e = solve_exhaustive(inst).map_err(err)?;
        ensure(d.cost() == e.cost(), || format!("seed {seed}: dst {:?} vs exhaustive {:?}", d.cost(), e.cost()))?;
    }
    Ok(format!("{} out-star instances, all costs equal", corpus.len()))
}

fn criterion_3() -> Outcome {
    let cases = psi_corpus(30).map_err(err)?;
    let (mut yes, mut no) = (0, 0);
    for case in &cases {
        let k = case.psi.k();
        ensure([4, 6, 8].contains(&k) && case.psi.host().vertex_count() <= 12, || {
            format!("{} seed {}: k = {k}, |V(G)| = {}", case.pattern, case.seed, case.psi.host().vertex_count())
        })?;
        let name = format!("{} seed {}", case.pattern, case.seed);
        let decision = decide_psi(&case.psi).map_err(err)?;
        let oracle = solve_psi_bruteforce(&case.psi).map_err(err)?;
        ensure(decision.yes == oracle.is_some(), || format!("{name}: decide {} vs oracle {}", decision.yes, oracle.is_some()))?;
        let threshold = Weight::integer(decision.output.threshold as i64);
        if decision.yes {
            yes += 1;
            ensure(decision.result.cost() == Some(threshold), || format!("{name}: yes-cost {:?} != {threshold}", decision.result.cost()))?;
            let phi = decision.embedding.as_ref().ok_or_else(|| format!("{name}: no embedding"))?;
            ensure(case.psi.is_embedding(phi), || format!("{name}: extracted map is not an embedding"))?;
        } else {
            no += 1;
            let full = solve_bnb(&decision.output.dsn).map_err(err)?;
            ensure(full.cost().is_none_or(|c| c > threshold), || format!("{name}: no-instance optimum {:?} <= {threshold}", full.cost()))?;
        }
    }
    Ok(format!("{} PSI instances over 5 patterns: {yes} yes at exactly the threshold, {no} no above it or infeasible", cases.len()))
}

/// A random graph of maximum degree three on `k` vertices.
fn random_subcubic(k: usize, seed: u64) -> UndirectedGraph {
    let mut rng = rng(seed);
    let mut g = UndirectedGraph::with_vertices(k);
    for _ in 0..3 * k {
        let u = rng.gen_range(0..k as Vertex);
        let v = rng.gen_range(0..k as Vertex);
        if u != v && g.degree(u) < 3 && g.degree(v) < 3 {
            g.add_edge(u, v);
        }
    }
    g
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    let mut patterns: Vec<(String, UndirectedGraph)> =
        pattern_corpus().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    for seed in 0..60u64 {
        let k = 2 + (seed % 23) as usize;
        patterns.push((format!("subcubic k={k} seed={seed}"), random_subcubic(k, seed)));
    }
    for (name, h) in &patterns {
        let lab = build_labelling(h).map_err(err)?;
        lab.verify(h).map_err(|e| format!("{name}: {e}"))?;
        let r = lab.r;
        ensure(lab.x_count <= r + 4 && lab.y_count <= r + 3 && lab.z_count < 6 * r, || {
            format!("{name}: |X|={} |Y|={} |Z|={} for r={r}", lab.x_count, lab.y_count, lab.z_count)
        })?;
        checked += 1;
    }
    let cases = psi_corpus(8).map_err(err)?;
    for case in &cases {
        let out = reduce(&case.psi).map_err(err)?;
        let (k, e) = (case.psi.k(), case.psi.pattern().edge_count());
        ensure(out.requests_y.len() == k && out.requests_z.len() == 2 * e, || {
            format!("{} seed {}: |A_Y|={} |A_Z|={}", case.pattern, case.seed, out.requests_y.len(), out.requests_z.len())
        })?;
        out.audit().map_err(|e| format!("{} seed {}: {e}", case.pattern, case.seed))?;
    }
    Ok(format!("{checked} labellings verified, {} reductions with |A_Y| = k and |A_Z| = 2|E(H)|", cases.len()))
}

fn criterion_5() -> Outcome {
    let mut instances: Vec<(String, DsnInstance)> = Vec::new();
    instances.extend(random_corpus().into_iter().map(|(s, i)| (format!("random {s}"), i)));
    instances.extend(out_star_corpus().into_iter().map(|(s, i)| (format!("out-star {s}"), i)));
    instances.extend(grid_corpus());
    let (mut solutions, mut paths) = (0, 0);
    for (name, inst) in &instances {
        let Some(sol) = optimum(inst)? else { continue };
        let terminals = inst.terminals();
        let q = terminals.len();
        let (_, records) = analyse_paths(sol.graph(), terminals).map_err(err)?;
        let (_, report) = reduce_length(inst, &sol).map_err(err)?;
        for p in records.iter().chain(&report.paths) {
            let (i, m) = (p.important.important.len(), p.marked.marked.len());
            ensure(i + 2 <= 2 * q && m <= 4 * i, || format!("{name}: |I_P|={i} |Q_P|={m} q={q}"))?;
            let (s, t) = p.request;
            let forbidden = p.important.labels.values().flatten().any(|l| {
                (l.terminal == s && l.side == Side::From) || (l.terminal == t && l.side == Side::To)
            });
            ensure(!forbidden, || format!("{name}: label (s, from) or (t, to) on {s}->{t}"))?;
            paths += 1;
        }
        solutions += 1;
    }
    Ok(format!("{solutions} minimized solutions, {paths} request paths, zero violations"))
}

fn all_ladder_specs() -> Vec<LadderSpec> {
    let mut specs = Vec::new();
    for n in 1..=12usize {
        for size in 0..=3usize.min(n) {
            let mut sets: Vec<BTreeSet<usize>> = Vec::new();
            if size == 0 {
                sets.push(BTreeSet::new());
            } else {
                let mut rng = rng((n * 10 + size) as u64);
                for _ in 0..6 {
                    sets.push((1..=n).choose_multiple(&mut rng, size).into_iter().collect());
                }
                sets.sort();
                sets.dedup();
            }
            specs.extend(sets.into_iter().map(|s| LadderSpec::new(n, s).unwrap()));
        }
    }
    specs
}

fn criterion_6() -> Outcome {
    let specs = all_ladder_specs();
    let mut not_applicable = 0;
    for spec in &specs {
        let name = format!("n={} I={:?}", spec.n, spec.identified);
        let g = make_ladder(spec);
        let k = spec.corners();
        let verdict = is_ladder_subdivision(&g, k.a, k.b, k.c, k.d);
        ensure(verdict.length() == Some(spec.n), || format!("{name}: {verdict:?}"))?;
        let (p1, p2) = ladder_two_path_decomposition(&g, spec).map_err(err)?;
        let union: BTreeSet<_> = p1.arcs().chain(p2.arcs()).collect();
        ensure(union == g.arc_set(), || format!("{name}: two-path union differs"))?;
        // only a plain ladder of length >= 2 is the underlying graph of a ladder
        let expected = spec.identified.is_empty() && spec.n >= 2;
        let und = is_ladder_undirected(&underlying_undirected(&g), k.a, k.b, k.c, k.d);
        ensure(und == expected, || format!("{name}: is_ladder_undirected = {und}"))?;
        let inst = ladder_instance(spec).map_err(err)?;
        let sol = SolutionSubgraph::whole(&g);
        if spec.n == 1 && spec.identified.is_empty() {
            ensure(!validate(&inst, &sol).map_err(err)?.is_valid(), || format!("{name}: single arc is not strongly connected"))?;
            not_applicable += 1;
            continue;
        }
        ensure(
            validate(&inst, &sol).map_err(err)?.is_valid() && is_inclusion_minimal(&inst, &sol).map_err(err)?,
            || format!("{name}: not an inclusion-minimal SCSS solution"),
        )?;
    }
    Ok(format!(
        "{} specs (n <= 12, |I| <= 3); undirected check positive exactly on plain ladders, G_1 has no SCSS solution ({not_applicable} spec)",
        specs.len()
    ))
}

fn reachability(g: &WeightedDigraph, terminals: &BTreeSet<Vertex>) -> Vec<bool> {
    let none = BTreeSet::new();
    terminals
        .iter()
        .flat_map(|&s| terminals.iter().map(move |&t| (s, t)))
        .map(|(s, t)| reaches(g, s, t, &none).unwrap())
        .collect()
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for n in 8..=27usize {
        for identified in [vec![], vec![1], vec![n], vec![2, n - 2]] {
            let name = format!("n={n} I={identified:?}");
            let spec = LadderSpec::new(n, identified).unwrap();
            let inst = framed_ladder_instance(&spec).map_err(err)?;
            let corners = spec.corners();
            let f: BTreeSet<Vertex> =
                (0..spec.vertex_count() as Vertex).filter(|v| !corners.set().contains(v)).collect();
            let sol = SolutionSubgraph::whole(inst.host());
            let (out, rep) = protrusion_replace(&inst, &sol, &f, corners).map_err(err)?;
            let rep = rep.ok_or_else(|| format!("{name}: not replaced"))?;
            let (h, h2) = (sol.graph(), out.graph());
            let outside = |g: &WeightedDigraph, set: &BTreeSet<Vertex>| -> BTreeSet<(Vertex, Vertex, Weight)> {
                g.arcs().filter(|(u, v, _)| !set.contains(u) && !set.contains(v)).collect()
            };
            ensure(outside(h, &f) == outside(h2, &rep.added), || format!("{name}: H'-F' != H-F"))?;
            let nbhd: BTreeSet<Vertex> =
                rep.added.iter().flat_map(|&v| h2.neighbors(v)).filter(|v| !rep.added.contains(v)).collect();
            ensure(nbhd == corners.set(), || format!("{name}: N(F') = {nbhd:?}"))?;
            ensure(rep.added.len() <= 14, || format!("{name}: |F'| = {}", rep.added.len()))?;
            let after = inst.with_host(h2.clone()).map_err(err)?;
            ensure(
                validate(&after, &out).map_err(err)?.is_valid() && is_inclusion_minimal(&after, &out).map_err(err)?,
                || format!("{name}: replacement is not a minimal solution"),
            )?;
            let terminals = inst.terminals();
            ensure(reachability(h, terminals) == reachability(h2, terminals), || format!("{name}: reachability changed"))?;
            count += 1;
        }
    }
    Ok(format!("{count} long-ladder solutions replaced, all five conditions exact"))
}

fn criterion_8() -> Outcome {
    let mut planar: Vec<(String, DsnInstance, bool)> =
        grid_corpus().into_iter().map(|(n, i)| (n, i, false)).collect();
    for n in 2..=9usize {
        let spec = LadderSpec::plain(n).unwrap();
        planar.push((format!("ladder {n}"), ladder_instance(&spec).unwrap(), false));
        planar.push((format!("framed ladder {n}"), framed_ladder_instance(&spec).unwrap(), true));
    }
    let (mut certified, mut skipped, mut worst) = (0, 0, 0.0f64);
    for (name, inst, whole) in &planar {
        let cert = if *whole {
            let sol = minimize(inst, &SolutionSubgraph::whole(inst.host())).map_err(err)?;
            Some(steinernet::structure::certify_treewidth_bound(inst, &sol, 0).map_err(err)?)
        } else {
            solve_with_certificate(inst, 0).map_err(err)?.1
        };
        let Some(cert) = cert else { continue };
        if cert.report.input.vertices > 22 {
            skipped += 1;
            continue;
        }
        let q = cert.q;
        ensure(cert.solution.exact, || format!("{name}: width not exact"))?;
        ensure(cert.solution.width <= 4 * q, || format!("{name}: tw {} > 4q = {}", cert.solution.width, 4 * q))?;
        let r = &cert.report;
        ensure(r.diameter as f64 <= 8.0 * r.measured_c * q as f64, || {
            format!("{name}: diameter {} > 8*{}*{q}", r.diameter, r.measured_c)
        })?;
        ensure(!cert.treewidth_increased, || format!("{name}: treewidth increased"))?;
        worst = worst.max(cert.ratio);
        certified += 1;
    }
    ensure(certified >= 50, || format!("only {certified} certified"))?;
    Ok(format!("{certified} planar solutions certified ({skipped} over 22 vertices skipped), max tw/q = {worst:.2}"))
}

fn criterion_9() -> Outcome {
    let mut instances: Vec<(String, DsnInstance)> = Vec::new();
    instances.extend(random_corpus().into_iter().map(|(s, i)| (format!("random {s}"), i)));
    instances.extend(out_star_corpus().into_iter().map(|(s, i)| (format!("out-star {s}"), i)));
    instances.extend(grid_corpus());
    for n in 2..=6usize {
        let spec = LadderSpec::plain(n).unwrap();
        let g = make_ladder(&spec);
        let reqs = cycle_requests(&[spec.a(1), spec.b(1), spec.a(n), spec.b(n)]);
        instances.push((format!("ladder {n}"), DsnInstance::new(g, reqs).unwrap()));
    }
    for (name, inst) in &instances {
        ensure(reverse(&reverse(inst)) == *inst, || format!("{name}: reverse is not an involution"))?;
        let fwd = solve_bnb(inst).map_err(err)?;
        let back = solve_bnb(&reverse(inst)).map_err(err)?;
        ensure(fwd.cost() == back.cost(), || format!("{name}: {:?} vs reversed {:?}", fwd.cost(), back.cost()))?;
        let whole = SolutionSubgraph::whole(inst.host());
        if !validate(inst, &whole).map_err(err)?.is_valid() {
            continue;
        }
        let mut starts = vec![whole];
        starts.extend(fwd.solution().cloned());
        for start in &starts {
            let m = minimize(inst, start).map_err(err)?;
            ensure(minimize(inst, &m).map_err(err)? == m, || format!("{name}: minimize is not idempotent"))?;
            ensure(cost(&m) <= cost(start), || format!("{name}: minimize raised the cost"))?;
            let rev = reverse_solution(&m);
            ensure(
                is_inclusion_minimal(&reverse(inst), &rev).map_err(err)? && cost(&rev) == cost(&m),
                || format!("{name}: reversal broke minimality or cost"),
            )?;
            let terminals = inst.terminals();
            let r1 = normalize_requests(&m, terminals);
            ensure(inst.requests().is_subset(&reach_closure(&r1, terminals)), || format!("{name}: R not implied by R'"))?;
            let reversed: BTreeSet<_> = r1.iter().map(|&(s, t)| (t, s)).collect();
            ensure(normalize_requests(&rev, terminals) == reversed, || format!("{name}: R' not reversal invariant"))?;
            if !r1.is_empty() {
                let normal = inst.with_requests(r1.iter().copied()).map_err(err)?;
                ensure(is_inclusion_minimal(&normal, &m).map_err(err)?, || format!("{name}: not minimal for R'"))?;
                let again = minimize(&normal, &m).map_err(err)?;
                ensure(normalize_requests(&again, terminals) == r1, || format!("{name}: R' not stable"))?;
            }
        }
    }
    Ok(format!("{} instances: reversal, minimize idempotence and R' stability exact", instances.len()))
}

/// Pairs joined by a chain of requests.
fn reach_closure(r: &BTreeSet<(Vertex, Vertex)>, terminals: &BTreeSet<Vertex>) -> BTreeSet<(Vertex, Vertex)> {
    let mut g = WeightedDigraph::new();
    for &v in terminals {
        g.add_vertex(v);
    }
    for &(s, t) in r {
        g.add_arc(s, t, Weight::ONE).unwrap();
    }
    let none = BTreeSet::new();
    let mut out = BTreeSet::new();
    for &s in terminals {
        for &t in terminals {
            if s != t && reaches(&g, s, t, &none).unwrap() {
                out.insert((s, t));
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let criteria: [Check; 9] = [
        ("oracle equivalence (bnb = exhaustive)", criterion_1),
        ("DST equivalence (dst = exhaustive)", criterion_2),
        ("reduction correctness", criterion_3),
        ("labelling identities", criterion_4),
        ("important-vertex bound", criterion_5),
        ("ladder suite", criterion_6),
        ("protrusion replacement", criterion_7),
        ("treewidth and diameter certification", criterion_8),
        ("symmetry and idempotence", criterion_9),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {title}: {detail} ({secs:.1} s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {detail} ({secs:.1} s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
