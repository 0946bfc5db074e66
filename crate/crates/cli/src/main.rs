use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod analyze;
mod error;
mod generate;
mod rows;
mod suites;

use error::CliError;

/// Path homology and cyclomatic complexity of control flow graphs.
#[derive(Parser)]
#[command(name = "pathhom", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    EdgeList,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldMode {
    Rational,
    Prime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    Skeleton,
    Goto,
    Tower,
    Suspension,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumerateFilter {
    Beta2Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Paper,
    Oracle,
    Series,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers, cyclomatic number and their difference for one digraph.
    Analyze(analyze::AnalyzeArgs),
    /// Write generated digraphs and a JSON-lines manifest.
    Generate(generate::GenerateArgs),
    /// Enumerate outdegree-2 digraphs and their progenitor records.
    Enumerate(generate::EnumerateArgs),
    /// Run a self-check suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Number of random pairs for the series suite.
        #[arg(long, default_value_t = 50)]
        pairs: usize,
        #[arg(long, default_value_t = 11)]
        seed: u64,
    },
    /// Count (cyclomatic, beta1) pairs in JSON-lines reports as CSV.
    Histogram {
        /// JSON-lines files from `generate` or `analyze --json`; stdin if none.
        inputs: Vec<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(args) => analyze::run(args),
        Command::Generate(args) => generate::run_generate(args),
        Command::Enumerate(args) => generate::run_enumerate(args),
        Command::Verify { suite, pairs, seed } => suites::run_verify(suite, pairs, seed),
        Command::Histogram { inputs } => suites::run_histogram(&inputs),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("pathhom: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}
