//! The `steinernet` command line: solve, analyze, reduce, gen and bench.

/// `println!` that ignores a closed stdout, e.g. when piped into `head`.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

mod bench;
mod commands;
mod report;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use steinernet::Error;

pub use report::{BenchReport, BenchRow, InstanceSummary, RunReport, SolverStats, RUN_REPORT_SCHEMA_VERSION};

/// Exit status when a command succeeds.
pub const EXIT_OK: u8 = 0;
/// Bench disagreement or an error without a dedicated code.
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;
pub const EXIT_DOMAIN: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "steinernet", version, about = "Directed Steiner network toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Exhaustive,
    Bnb,
    Dst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolutionArg {
    /// An optimum found by branch and bound (or the DST program for out-stars).
    Optimal,
    /// The whole host, minimized.
    Whole,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve a DSN file exactly and print the cost and witness arcs.
    Solve {
        file: std::path::PathBuf,
        #[arg(long, value_enum, default_value = "bnb")]
        engine: EngineArg,
        /// Also run the structural certification on the optimum.
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Minimize a solution, run the length-reduction pipeline and certify
    /// treewidth and diameter bounds.
    Analyze {
        file: std::path::PathBuf,
        #[arg(long, value_enum, default_value = "optimal")]
        solution: SolutionArg,
        /// Declared genus; defaults to the file's `c genus` line, then 0.
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Build the DSN instance of a PSI file.
    Reduce {
        file: std::path::PathBuf,
        /// Where to write the DSN file; stdout when absent and not deciding.
        #[arg(short, long)]
        output: Option<std::path::PathBuf>,
        /// Solve the instance and answer the PSI question.
        #[arg(long)]
        decide: bool,
        #[arg(long)]
        json: bool,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(short, long, global = true)]
        output: Option<std::path::PathBuf>,
        #[arg(long, global = true)]
        json: bool,
    },
    /// Run the oracle corpus and print one row per instance.
    Bench {
        /// Seeds per randomized family.
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// The ladder `G_{n,I}` with its corners strongly connected.
    Ladder {
        n: usize,
        /// Identified positions, 1-based.
        #[arg(value_delimiter = ',')]
        identified: Vec<usize>,
        /// Attach four pendant terminals instead of requesting the corners.
        #[arg(long)]
        framed: bool,
    },
    /// A bidirected unit grid with `q` random terminals on a request cycle.
    Grid {
        w: usize,
        h: usize,
        #[arg(long, default_value_t = 3)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A random host with `q` terminals and `p` requests.
    Random { n: usize, m: usize, q: usize, p: usize, seed: u64 },
    /// A seeded PSI instance for one of the shipped 3-regular patterns.
    Psi {
        /// k4, k33, prism, cube or wagner.
        pattern: String,
        seed: u64,
    },
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::Domain(_) => EXIT_DOMAIN,
        _ => EXIT_FAILURE,
    }
}

/// Parses arguments, runs the command, and returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
        }
    };
    let json = match &cli.command {
        Command::Solve { json, .. }
        | Command::Analyze { json, .. }
        | Command::Reduce { json, .. }
        | Command::Gen { json, .. }
        | Command::Bench { json, .. } => *json,
    };
    match commands::dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            let code = err.code();
            if json {
                let body = serde_json::json!({ "error": err.to_string(), "exit_code": code });
                println!("{body}");
            } else {
                eprintln!("error: {err}");
            }
            code
        }
    }
}
