use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;

use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "distchrom",
    version,
    about = "Colorings, bounds and exact solvers for distance graphs G(n,r,s)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Theorem1,
    Sum,
    BoseChowla,
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Chi,
    Alpha,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'r')]
    pub r: Option<usize>,
    #[arg(short = 's')]
    pub s: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an explicit coloring and emit a verified certificate.
    Color {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Re-verify a coloring certificate (PATH or `-` for stdin).
    Verify { input: PathBuf },
    /// Lower and upper bounds on the chromatic number.
    Bounds {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Exact chromatic or independence number of a small instance.
    Exact {
        #[arg(value_enum)]
        which: Which,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Seconds.
        #[arg(long)]
        time_budget: Option<f64>,
        /// Threads for the independence search.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Tabulate the power-of-two condition for all primes 3 < p <= limit.
    ScanCondition {
        #[arg(long)]
        limit: u64,
    },
    /// Emit the Bose–Chowla B_h set for GF(q^h).
    Bhset {
        #[arg(short = 'q')]
        q: u64,
        #[arg(long = "degree", short = 'd', value_name = "H")]
        h: usize,
    },
    /// Dump the circle graph for a prime p, with its 2-coloring.
    Circles {
        #[arg(short = 'p')]
        p: u64,
    },
    /// Bounds table for G(n,3,2), n = 4..=n_max.
    Table {
        #[arg(long = "n-max", visible_alias = "limit")]
        n_max: usize,
    },
}

fn run(cli: Cli) -> Result<commands::Output, CliError> {
    let fmt = cli.format;
    match cli.command {
        Command::Color { method, spec } => commands::color(method, &spec, fmt),
        Command::Verify { input } => commands::verify(&input, fmt),
        Command::Bounds { spec } => commands::bounds(&spec, fmt),
        Command::Exact {
            which,
            spec,
            max_nodes,
            time_budget,
            workers,
        } => commands::exact(which, &spec, max_nodes, time_budget, workers, fmt),
        Command::ScanCondition { limit } => commands::scan_condition(limit, fmt),
        Command::Bhset { q, h } => commands::bhset(q, h, fmt),
        Command::Circles { p } => commands::circles(p, fmt),
        Command::Table { n_max } => commands::table(n_max, fmt),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let result = run(cli).and_then(|output| {
        emit(&output.text, out.as_ref())?;
        match output.failure {
            Some(err) => Err(err),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code())
        }
    }
}
