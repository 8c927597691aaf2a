use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rwkit::{render_text, run, AnalysisConfig, OutputFormat, Task};
use rwkit_core::parallel_rewriting::DEFAULT_MAX_REDEXES;
use rwkit_core::rewriting::{DEFAULT_EXPANSIONS, DEFAULT_MAX_TERM_SIZE, DEFAULT_STEPS};

/// Confluence and rewriting analyses for first-order term rewriting systems.
///
/// Exit status: 0 for a definite answer, 2 when undecided within the
/// resource limits, 1 on errors.
#[derive(Parser, Debug)]
#[command(name = "rwkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Search budget: node expansions per reachability search, or rewrite
    /// steps for `normalize` [default: 10000, normalize: 1000]
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    fuel: Option<u64>,

    /// Terms larger than this are not explored.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TERM_SIZE as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_term_size: u64,

    /// Largest redex count `parallel` will enumerate subsets of.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_REDEXES as u64,
          value_parser = clap::value_parser!(u64).range(1..=24))]
    max_redexes: u64,

    /// Treat the system as terminating so joinable critical pairs prove confluence.
    #[arg(long, global = true)]
    assume_terminating: bool,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// List only one of each pair of mirror-image critical pairs.
    #[arg(long = "dedupe-cps", global = true)]
    dedupe_cps: bool,

    /// Read unknown identifiers in term arguments as fresh constants.
    #[arg(long, global = true)]
    allow_fresh_consts: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide confluence.
    Check { file: PathBuf },
    /// List critical pairs with their joinability.
    Cps { file: PathBuf },
    /// Report left-linearity and overlaps.
    Orthogonal { file: PathBuf },
    /// Rewrite a term to normal form.
    Normalize { file: PathBuf, term: String },
    /// Search for a common reduct of two terms.
    Joinable {
        file: PathBuf,
        left: String,
        right: String,
    },
    /// List parallel reducts of a term and test the diamond property there.
    Parallel { file: PathBuf, term: String },
    /// Analyse a finite abstract reduction system given as `x -> y` lines.
    Ars { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let task = match cli.command {
        Command::Check { file } => Task::Check { file },
        Command::Cps { file } => Task::Cps { file },
        Command::Orthogonal { file } => Task::Orthogonal { file },
        Command::Normalize { file, term } => Task::Normalize { file, term },
        Command::Joinable { file, left, right } => Task::Joinable { file, left, right },
        Command::Parallel { file, term } => Task::Parallel { file, term },
        Command::Ars { file } => Task::Ars { file },
    };
    let default_fuel = match task {
        Task::Normalize { .. } => DEFAULT_STEPS,
        _ => DEFAULT_EXPANSIONS,
    };
    let config = AnalysisConfig {
        fuel: cli.fuel.map_or(default_fuel, |f| f as usize),
        max_term_size: cli.max_term_size as usize,
        max_redexes: cli.max_redexes as usize,
        assume_terminating: cli.assume_terminating,
        output_format: cli.format,
        dedupe_symmetric_cps: cli.dedupe_cps,
        allow_fresh_consts: cli.allow_fresh_consts,
    };
    match run(&task, &config) {
        Ok(report) => {
            match config.output_format {
                OutputFormat::Text => print!("{}", render_text(&report)),
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                ),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
