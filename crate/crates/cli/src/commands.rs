use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use steinernet::dsn::{minimize, validate};
use steinernet::format::{emit_dsn, emit_psi, parse_dsn, parse_psi, DsnFile};
use steinernet::generate::{framed_ladder_instance, grid_instance, ladder_instance, random_instance};
use steinernet::reduction::corpus::{pattern_corpus, seeded_host};
use steinernet::reduction::{decide_psi, reduce};
use steinernet::solvers::{solve_bnb, solve_dst, solve_exhaustive, solve_with_certificate, SolveResult};
use steinernet::structure::{certify_treewidth_bound, LadderSpec, TreewidthCertificate};
use steinernet::SolutionSubgraph;

use crate::report::{InstanceSummary, RunReport};
use crate::{bench, exit_code, Command, EngineArg, GenKind, SolutionArg, EXIT_FAILURE, EXIT_INFEASIBLE, EXIT_OK};

#[derive(Debug)]
pub struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    pub fn code(&self) -> u8 {
        self.code
    }

    fn other(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: EXIT_FAILURE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<steinernet::Error> for CliError {
    fn from(err: steinernet::Error) -> Self {
        Self {
            code: exit_code(&err),
            message: err.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::other(format!("{}: {e}", path.display())))
}

fn read_dsn(path: &Path) -> CliResult<DsnFile> {
    let text = read(path)?;
    parse_dsn(&text).map_err(|e| CliError::from(e).prefixed(path))
}

impl CliError {
    fn prefixed(mut self, path: &Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }
}

fn write_or_print(output: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::other(format!("{}: {e}", path.display()))),
        None => {
            out!("{}", text.trim_end_matches('\n'));
            Ok(())
        }
    }
}

fn print_json(report: &RunReport) {
    let body = serde_json::to_string_pretty(report).expect("reports serialize");
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn print_arcs(sol: &SolutionSubgraph) {
    for (u, v) in sol.arcs() {
        let w = sol.graph().weight(u, v).expect("solution arcs are weighted");
        out!("a {} {} {}", u + 1, v + 1, w);
    }
}

pub fn dispatch(command: Command) -> CliResult<u8> {
    match command {
        Command::Solve {
            file,
            engine,
            certify,
            genus,
            json,
        } => solve(&file, engine, certify.then_some(genus), json),
        Command::Analyze {
            file,
            solution,
            genus,
            json,
        } => analyze(&file, solution, genus, json),
        Command::Reduce {
            file,
            output,
            decide,
            json,
        } => reduce_cmd(&file, output.as_ref(), decide, json),
        Command::Gen { kind, output, json } => gen(kind, output.as_ref(), json),
        Command::Bench { seeds, json } => bench::run(seeds, json),
    }
}

fn solve(file: &Path, engine: EngineArg, certify: Option<Option<u32>>, json: bool) -> CliResult<u8> {
    let start = Instant::now();
    let parsed = read_dsn(file)?;
    let inst = &parsed.instance;
    let res: SolveResult = match engine {
        EngineArg::Exhaustive => solve_exhaustive(inst)?,
        EngineArg::Bnb => solve_bnb(inst)?,
        EngineArg::Dst => solve_dst(inst)?,
    };
    let certificate = match (certify, res.solution()) {
        (Some(genus), Some(sol)) => {
            let genus = genus.or(parsed.genus()).unwrap_or(0);
            Some(certify_treewidth_bound(inst, &minimize(inst, sol)?, genus)?)
        }
        _ => None,
    };
    let code = if res.is_feasible() { EXIT_OK } else { EXIT_INFEASIBLE };
    if json {
        let mut report = RunReport::new("solve").with_result(&res);
        report.instance = Some(InstanceSummary::of(inst));
        report.certificate = certificate;
        report.wall_ms = elapsed_ms(start);
        print_json(&report);
        return Ok(code);
    }
    match res.solution() {
        Some(sol) => {
            out!("cost {}", res.cost().expect("feasible results have a cost"));
            out!("engine {} nodes {}", res.engine, res.nodes);
            print_arcs(sol);
        }
        None => out!("infeasible"),
    }
    if let Some(cert) = &certificate {
        print_certificate(cert);
    }
    Ok(code)
}

fn print_certificate(cert: &TreewidthCertificate) {
    let width = |w: &steinernet::structure::WidthValue| {
        format!("{}{}", w.width, if w.exact { "" } else { " (upper bound)" })
    };
    let r = &cert.report;
    out!("terminals {}", cert.q);
    out!("treewidth {} reduced {}", width(&cert.solution), width(&cert.reduced));
    out!(
        "treewidth within 4q: {}",
        if cert.within_engineering_bound { "yes" } else { "no" }
    );
    if cert.treewidth_increased {
        out!("warning: treewidth increased by the length reduction");
    }
    out!("rounds {}", r.rounds.len());
    for round in &r.rounds {
        out!(
            "  request {} -> {}: vertices {} -> {}",
            round.request.0 + 1,
            round.request.1 + 1,
            round.before.vertices,
            round.after.vertices
        );
    }
    out!("measured C {:.3}", r.measured_c);
    out!(
        "diameter {} (bound {:.1}, {})",
        r.diameter,
        r.diameter_bound,
        if r.diameter_within_bound { "within" } else { "exceeded" }
    );
    out!(
        "path checks: {}",
        if r.all_checks_hold() { "all hold" } else { "violations" }
    );
}

fn analyze(file: &Path, which: SolutionArg, genus: Option<u32>, json: bool) -> CliResult<u8> {
    let start = Instant::now();
    let parsed = read_dsn(file)?;
    let inst = &parsed.instance;
    let genus = genus.or(parsed.genus()).unwrap_or(0);
    let (res, certificate) = match which {
        SolutionArg::Optimal => {
            let (res, cert) = solve_with_certificate(inst, genus)?;
            (Some(res), cert)
        }
        SolutionArg::Whole => {
            let whole = SolutionSubgraph::whole(inst.host());
            if validate(inst, &whole)?.is_valid() {
                (None, Some(certify_treewidth_bound(inst, &minimize(inst, &whole)?, genus)?))
            } else {
                (None, None)
            }
        }
    };
    let feasible = certificate.is_some();
    let code = if feasible { EXIT_OK } else { EXIT_INFEASIBLE };
    if json {
        let mut report = RunReport::new("analyze");
        if let Some(res) = &res {
            report = report.with_result(res);
        }
        report.feasible = Some(feasible);
        report.instance = Some(InstanceSummary::of(inst));
        report.certificate = certificate;
        report.wall_ms = elapsed_ms(start);
        print_json(&report);
        return Ok(code);
    }
    match &certificate {
        Some(cert) => {
            if let Some(cost) = res.as_ref().and_then(|r| r.cost()) {
                out!("cost {cost}");
            }
            print_certificate(cert);
        }
        None => out!("infeasible"),
    }
    Ok(code)
}

fn reduce_cmd(file: &Path, output: Option<&PathBuf>, decide: bool, json: bool) -> CliResult<u8> {
    let start = Instant::now();
    let text = read(file)?;
    let psi = parse_psi(&text).map_err(|e| CliError::from(e).prefixed(file))?;
    let red = reduce(&psi)?;
    let dsn_text = emit_dsn(
        &DsnFile::new(red.dsn.clone())
            .with_meta("generator", "psi-reduction")
            .with_meta("threshold", red.threshold),
    );
    if let Some(path) = output {
        write_or_print(Some(path), &dsn_text)?;
    } else if !decide && !json {
        out!("{}", dsn_text.trim_end_matches('\n'));
    }
    let decision = if decide { Some(decide_psi(&psi)?) } else { None };
    if json {
        let mut report = RunReport::new("reduce");
        report.instance = Some(InstanceSummary::of(&red.dsn));
        report.threshold = Some(red.threshold);
        if let Some(d) = &decision {
            report = report.with_result(&d.result);
            report.decision = Some(d.summary());
        }
        report.wall_ms = elapsed_ms(start);
        print_json(&report);
        return Ok(EXIT_OK);
    }
    if let Some(d) = decision {
        let threshold = d.output.threshold;
        match d.result.cost() {
            Some(cost) if d.yes => out!("yes, cost {cost} = threshold {threshold}"),
            Some(cost) => out!("no, cost {cost} > threshold {threshold}"),
            None => out!("no, no solution of cost at most threshold {threshold}"),
        }
        if let Some(phi) = &d.embedding {
            let pairs: Vec<String> = phi.iter().map(|(x, u)| format!("{}->{}", x + 1, u + 1)).collect();
            out!("embedding {}", pairs.join(" "));
        }
    }
    Ok(EXIT_OK)
}

fn gen(kind: GenKind, output: Option<&PathBuf>, json: bool) -> CliResult<u8> {
    let start = Instant::now();
    let (text, inst, seed) = match kind {
        GenKind::Ladder { n, identified, framed } => {
            let spec = LadderSpec::new(n, identified.iter().copied())?;
            let inst = if framed { framed_ladder_instance(&spec)? } else { ladder_instance(&spec)? };
            let ids: Vec<String> = identified.iter().map(usize::to_string).collect();
            let mut file = DsnFile::new(inst.clone())
                .with_meta("generator", format!("ladder {n} {}", ids.join(",")).trim_end())
                .with_meta("genus", 0);
            if framed {
                file = file.with_meta("framed", "yes");
            }
            (emit_dsn(&file), Some(inst), None)
        }
        GenKind::Grid { w, h, q, seed } => {
            let inst = grid_instance(w, h, q, seed)?;
            let file = DsnFile::new(inst.clone())
                .with_meta("generator", format!("grid {w} {h} q={q}"))
                .with_meta("seed", seed)
                .with_meta("genus", 0);
            (emit_dsn(&file), Some(inst), Some(seed))
        }
        GenKind::Random { n, m, q, p, seed } => {
            let inst = random_instance(n, m, q, p, seed)?;
            let file = DsnFile::new(inst.clone())
                .with_meta("generator", format!("random {n} {m} {q} {p}"))
                .with_meta("seed", seed);
            (emit_dsn(&file), Some(inst), Some(seed))
        }
        GenKind::Psi { pattern, seed } => {
            let corpus = pattern_corpus();
            let Some((_, h)) = corpus.iter().find(|(name, _)| *name == pattern) else {
                let names: Vec<&str> = corpus.iter().map(|(n, _)| *n).collect();
                return Err(CliError::other(format!(
                    "unknown pattern {pattern:?}; expected one of {}",
                    names.join(", ")
                )));
            };
            let (_, psi) = seeded_host(h, seed)?;
            (emit_psi(&psi), None, Some(seed))
        }
    };
    if json {
        let mut report = RunReport::new("gen");
        report.instance = inst.as_ref().map(InstanceSummary::of);
        report.seed = seed;
        report.text = Some(text.clone());
        report.wall_ms = elapsed_ms(start);
        if let Some(path) = output {
            write_or_print(Some(path), &text)?;
        }
        print_json(&report);
        return Ok(EXIT_OK);
    }
    write_or_print(output, &text)?;
    Ok(EXIT_OK)
}
