use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use siegel_core::grading::grading;
use siegel_core::homogeneity::transitivity_verdict;
use siegel_core::workbench::{case_exclusions, load_spec, parse_n_range, verify_paper, CATALOG};

/// Automorphism algebra dimensions of Siegel domains of the second kind.
#[derive(Parser)]
#[command(name = "siegel", version)]
struct Cli {
    /// Number of pseudo-random samples for validation and transitivity.
    #[arg(long, global = true, default_value_t = 64)]
    samples: usize,
    /// Seed for every sample stream.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the graded dimensions of a domain as JSON.
    Grading {
        /// `builtin:NAME?key=val&...` or a JSON spec file.
        spec: String,
    },
    /// Print the transitivity verdict of a domain as JSON.
    Homogeneity { spec: String },
    /// Print which (k, n) survive the universal bound for d = n^2 - offset.
    Audit {
        #[arg(long)]
        offset: usize,
        #[arg(long, default_value = "4..8")]
        n_range: String,
    },
    /// List the catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check every known value against the engine.
    VerifyPaper {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn malformed(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Grading { spec } => match load_spec(&spec, cli.samples, cli.seed) {
            Ok(d) => print_json(&grading(&d)),
            Err(e) => return malformed(e),
        },
        Command::Homogeneity { spec } => match load_spec(&spec, cli.samples, cli.seed) {
            Ok(d) => print_json(&transitivity_verdict(&d, cli.samples, cli.seed)),
            Err(e) => return malformed(e),
        },
        Command::Audit { offset, n_range } => {
            let Some(range) = parse_n_range(&n_range) else {
                return malformed(format!("bad n-range `{n_range}`"));
            };
            match case_exclusions(offset, range) {
                Ok(t) => print_json(&t),
                Err(e) => return malformed(e),
            }
        }
        Command::Catalog { action: CatalogAction::List } => {
            for (name, desc) in CATALOG {
                println!("{name:<14} {desc}");
            }
        }
        Command::VerifyPaper { json } => {
            let report = verify_paper(cli.samples, cli.seed);
            if json {
                print_json(&report);
            } else {
                for c in &report.claims {
                    let tag = if c.pass { "PASS" } else { "FAIL" };
                    println!("{tag} {}: expected {}, got {} [{}]", c.name, c.expected, c.actual, c.citation);
                }
                println!("{} passed, {} failed", report.passed, report.failed);
            }
            if !report.all_passed() {
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    run(cli)
}
