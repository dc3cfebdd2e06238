use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use clusterfold::explorer::report::{check_report, explore_report, fold_report, mutate_report, seed_report, ReportError, TypeSetup};
use clusterfold::explorer::{EnumerateOptions, DEFAULT_CAP};
use clusterfold::weyl::ReducedWord;
use clusterfold::{Parallelism, TypeLabel};
use serde_json::Value;

const THREADS_VAR: &str = "CLUSTERFOLD_THREADS";

/// Exact cluster-algebra folding: Cartan folds, seeds, mutation and
/// exchange-graph exploration.
#[derive(Parser)]
#[command(name = "clusterfold", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show the unfolding of a type and its two folded Cartan matrices.
    Fold {
        #[arg(long = "type")]
        ty: TypeLabel,
    },
    /// Print the initial seed attached to a reduced word of the longest element.
    Seed {
        #[arg(long = "type")]
        ty: TypeLabel,
        /// Reduced word in the type's own letters (comma separated).
        #[arg(long, value_delimiter = ',')]
        word: Option<Vec<u32>>,
    },
    /// Mutate the initial seed; block ids for non-simply-laced types.
    Mutate {
        #[arg(long = "type")]
        ty: TypeLabel,
        #[arg(long, value_delimiter = ',')]
        word: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',', required = true)]
        sequence: Vec<usize>,
    },
    /// Enumerate the exchange graph.
    Explore {
        #[arg(long = "type")]
        ty: TypeLabel,
        /// Explore the simply-laced source instead of the folded structure.
        #[arg(long)]
        unfolded: bool,
        #[arg(long, default_value_t = DEFAULT_CAP, value_parser = clap::value_parser!(usize))]
        max_seeds: usize,
        /// Write the graph in DOT format to this file.
        #[arg(long)]
        emit_graph: Option<PathBuf>,
    },
    /// Check linear independence of cluster monomials up to a degree.
    Check {
        #[arg(long = "type")]
        ty: TypeLabel,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        degree: u32,
        #[arg(long)]
        unfolded: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_seeds: usize,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Explore(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn print(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("json values serialize");
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn setup(ty: TypeLabel, word: Option<Vec<u32>>) -> Result<TypeSetup, Failure> {
    Ok(TypeSetup::new(ty, word.map(ReducedWord))?)
}

fn run(cmd: Command) -> Result<(), Failure> {
    let opts = |cap| EnumerateOptions {
        cap,
        parallelism: Parallelism::Parallel,
    };
    match cmd {
        Command::Fold { ty } => print(&fold_report(ty)?),
        Command::Seed { ty, word } => print(&seed_report(&setup(ty, word)?)),
        Command::Mutate { ty, word, sequence } => {
            let (v, consistent) = mutate_report(&setup(ty, word)?, &sequence)?;
            print(&v);
            if !consistent {
                return Err(Failure::Verification("folded and unfolded mutation disagree".into()));
            }
        }
        Command::Explore {
            ty,
            unfolded,
            max_seeds,
            emit_graph,
        } => {
            let out = explore_report(&setup(ty, None)?, unfolded, opts(max_seeds))?;
            if let Some(path) = emit_graph {
                std::fs::write(&path, &out.dot)
                    .map_err(|e| Failure::Usage(format!("--emit-graph {}: {e}", path.display())))?;
            }
            print(&out.json);
            if !out.complete {
                eprintln!("warning: stopped at {max_seeds} seeds; graph is partial");
            }
        }
        Command::Check {
            ty,
            degree,
            unfolded,
            max_seeds,
        } => {
            let (v, report) = check_report(&setup(ty, None)?, unfolded, degree, opts(max_seeds))?;
            print(&v);
            if !report.independent {
                return Err(Failure::Verification(format!(
                    "rank {} < {} monomials",
                    report.rank, report.monomial_count
                )));
            }
        }
    }
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR}={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
