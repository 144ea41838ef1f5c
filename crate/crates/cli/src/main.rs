use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use posetlab::commands::{self, CliError, EXIT_USAGE};
use posetlab::Report;
use posetlab_core::verify::Scope;

/// Environment variable capping the number of worker threads.
const WORKERS_VAR: &str = "POSETLAB_WORKERS";

#[derive(Parser)]
#[command(name = "posetlab", version, about = "Finite posets, their maps, and exhaustive checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct Budget {
    /// Largest size to enumerate; defaults depend on the statement.
    #[arg(long)]
    n_max: Option<usize>,
    /// Check one poset per isomorphism class instead of every labeling.
    #[arg(long)]
    iso_dedup: bool,
    /// Print verdicts as JSON.
    #[arg(long)]
    json: bool,
    /// Accepted for compatibility; enumeration is deterministic, so this has no effect.
    #[arg(long)]
    seed: Option<u64>,
}

impl Budget {
    fn scope(self) -> Scope {
        Scope {
            n_max: self.n_max,
            iso_dedup: self.iso_dedup,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a property of the poset, map or classes in a document.
    Check { file: PathBuf, property: String },
    /// Run a registered statement, or `all`.
    Verify {
        target: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Search for a map satisfying the hypothesis but not the conclusion.
    Search {
        #[arg(long)]
        hypothesis: String,
        #[arg(long)]
        conclusion: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Quotient by the document's classes, or by the kernel of its map.
    Quotient { file: PathBuf },
    /// Hasse diagram in DOT.
    ExportDot { file: PathBuf },
    /// Ordinal sum, first below second.
    Sum { first: PathBuf, second: PathBuf },
    /// Direct product.
    Product { first: PathBuf, second: PathBuf },
    /// Reprint a document in canonical form.
    Print { file: PathBuf },
    /// List statements, search predicates and check properties.
    List,
}

fn run(command: Command) -> Result<Report, CliError> {
    use commands::*;
    match command {
        Command::Check { file, property } => cmd_check(&load(&file)?, &property),
        Command::Verify { target, budget } => cmd_verify(&target, budget.scope(), budget.json),
        Command::Search {
            hypothesis,
            conclusion,
            budget,
        } => cmd_search(&hypothesis, &conclusion, budget.scope(), budget.json),
        Command::Quotient { file } => cmd_quotient(&load(&file)?),
        Command::ExportDot { file } => Ok(cmd_export_dot(&load(&file)?)),
        Command::Sum { first, second } => cmd_sum(&load(&first)?, &load(&second)?),
        Command::Product { first, second } => cmd_product(&load(&first)?, &load(&second)?),
        Command::Print { file } => Ok(cmd_print(&load(&file)?)),
        Command::List => Ok(cmd_list()),
    }
}

fn configure_workers() -> Result<(), String> {
    let Ok(value) = std::env::var(WORKERS_VAR) else {
        return Ok(());
    };
    let workers: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{WORKERS_VAR} must be a positive integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(message) = configure_workers() {
        eprintln!("error: {message}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli.command) {
        Ok(report) => {
            print!("{}", report.stdout);
            eprint!("{}", report.stderr);
            let _ = std::io::stdout().flush();
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
