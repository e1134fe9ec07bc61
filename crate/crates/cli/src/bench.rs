use std::time::Instant;

use steinernet::generate::{framed_ladder_instance, random_instance, random_out_star};
use steinernet::reduction::corpus::psi_corpus;
use steinernet::reduction::{decide_psi, solve_psi_bruteforce};
use steinernet::solvers::{solve_bnb, solve_dst, solve_exhaustive, SolveResult};
use steinernet::structure::{reduce_length, LadderSpec};
use steinernet::{Result, SolutionSubgraph};

use crate::commands::CliError;
use crate::report::{BenchReport, BenchRow};
use crate::{EXIT_FAILURE, EXIT_OK};

const LADDER_LENGTHS: std::ops::RangeInclusive<usize> = 8..=16;

fn cost_text(res: &SolveResult) -> Option<String> {
    res.cost().map(|c| c.to_string())
}

fn timed<F: FnOnce() -> Result<BenchRow>>(f: F) -> Result<BenchRow> {
    let start = Instant::now();
    let mut row = f()?;
    row.ms = start.elapsed().as_millis() as u64;
    Ok(row)
}

fn engine_row(name: String, tested: SolveResult, oracle: SolveResult) -> BenchRow {
    let (cost, oracle) = (cost_text(&tested), cost_text(&oracle));
    let agree = cost == oracle;
    BenchRow {
        instance: name,
        verdict: format!("{} vs {}", tested.engine, "exhaustive"),
        cost,
        oracle,
        agree,
        ms: 0,
    }
}

fn rows(seeds: u64) -> Result<Vec<BenchRow>> {
    let mut out = Vec::new();
    for seed in 0..seeds {
        out.push(timed(|| {
            let inst = random_instance(7, 16, 4, 3, seed)?;
            Ok(engine_row(format!("random/{seed:04}"), solve_bnb(&inst)?, solve_exhaustive(&inst)?))
        })?);
        out.push(timed(|| {
            let inst = random_out_star(8, 18, 4, seed)?;
            Ok(engine_row(format!("outstar/{seed:04}"), solve_dst(&inst)?, solve_exhaustive(&inst)?))
        })?);
    }
    for case in psi_corpus(seeds)? {
        out.push(timed(|| {
            let decision = decide_psi(&case.psi)?;
            let oracle = solve_psi_bruteforce(&case.psi)?.is_some();
            let verdict = |yes: bool| if yes { "yes" } else { "no" }.to_string();
            Ok(BenchRow {
                instance: format!("psi/{}/{:04}", case.pattern, case.seed),
                cost: Some(verdict(decision.yes)),
                oracle: Some(verdict(oracle)),
                verdict: format!("threshold {}", decision.output.threshold),
                agree: decision.yes == oracle,
                ms: 0,
            })
        })?);
    }
    for n in LADDER_LENGTHS {
        out.push(timed(|| {
            let inst = framed_ladder_instance(&LadderSpec::plain(n)?)?;
            let (reduced, report) = reduce_length(&inst, &SolutionSubgraph::whole(inst.host()))?;
            let checks = report.all_checks_hold();
            Ok(BenchRow {
                instance: format!("ladder/{n:02}"),
                cost: Some(reduced.vertex_count().to_string()),
                oracle: None,
                verdict: format!(
                    "rounds {} checks {} diameter {}",
                    report.rounds.len(),
                    if checks { "ok" } else { "violated" },
                    if report.diameter_within_bound { "ok" } else { "exceeded" }
                ),
                agree: checks && report.diameter_within_bound,
                ms: 0,
            })
        })?);
    }
    out.sort_by(|a, b| a.instance.cmp(&b.instance));
    Ok(out)
}

pub fn run(seeds: u64, json: bool) -> std::result::Result<u8, CliError> {
    let rows = rows(seeds)?;
    let disagreements = rows.iter().filter(|r| !r.agree).count();
    if json {
        let report = BenchReport {
            schema_version: crate::RUN_REPORT_SCHEMA_VERSION,
            seeds,
            rows,
            disagreements,
        };
        out!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    } else {
        out!("{:<20} {:>10} {:>10} {:<36} {:>7} {:>6}", "instance", "cost", "oracle", "verdict", "agree", "ms");
        for r in &rows {
            out!(
                "{:<20} {:>10} {:>10} {:<36} {:>7} {:>6}",
                r.instance,
                r.cost.as_deref().unwrap_or("-"),
                r.oracle.as_deref().unwrap_or("-"),
                r.verdict,
                if r.agree { "yes" } else { "NO" },
                r.ms
            );
        }
        out!("{} rows, {} disagreements", rows.len(), disagreements);
    }
    Ok(if disagreements == 0 { EXIT_OK } else { EXIT_FAILURE })
}
