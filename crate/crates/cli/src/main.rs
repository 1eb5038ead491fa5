mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use groupsmith::universe::EmbeddingKind;
use groupsmith::GroupError;

use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "groupsmith", version, about = "Adjoin roots to finite groups and check lower bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Closure or search cap; overrides GROUPSMITH_CAP and the built-in default.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Worker threads for parallel searches (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Seed for random equations.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report `timing_ms` as null so identical runs give identical bytes.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Natural,
    Regular,
    Doubled,
}

impl From<Kind> for EmbeddingKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Natural => EmbeddingKind::Natural,
            Kind::Regular => EmbeddingKind::Regular,
            Kind::Doubled => EmbeddingKind::Doubled,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named group, or its wreath product with Z_n when --n is given.
    Construct {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Smallest available overgroup in which the element is a square.
    AdjoinSqrt {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
    },
    /// Closed-form n-th root in the wreath product with Z_n.
    AdjoinNthRoot {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        n: usize,
    },
    /// Solve g1*x*g2*x*...*gn*x = 1 in the wreath product with Z_n.
    SolvePositive {
        #[arg(long)]
        group: String,
        /// Coefficients separated by "*x*"; random of degree --n when absent.
        #[arg(long)]
        equation: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Subgroup generated by the diagonal and the root, checked against its closed form.
    Lemma7Check {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
    },
    /// Quotient of the wreath product by the inversion subgroup over N.
    Lemma8Check {
        #[arg(long)]
        group: String,
        /// Generators of N separated by ';'.
        #[arg(long)]
        subgroup: String,
    },
    /// Choose the cheapest construction that gives the element a square root.
    Prop1Embed {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
    },
    /// Replay the dihedral lower-bound argument on concrete overgroups.
    Theorem1Verify {
        #[arg(long)]
        p: usize,
        /// Reflection of D_p to take a root of (wreath mode).
        #[arg(long)]
        element: Option<String>,
        /// Search S_m for roots instead of using the wreath product.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = Kind::Natural)]
        kind: Kind,
    },
    /// Check that -1 is a square mod p exactly when p = 1 mod 4.
    ResidueCheck {
        #[arg(long, default_value_t = 1000)]
        max_p: u64,
    },
    /// Exhaustive search of S_m for square roots of a reflection of D_p.
    Search {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Kind::Natural)]
        kind: Kind,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Construct { .. } => "construct",
            Command::AdjoinSqrt { .. } => "adjoin-sqrt",
            Command::AdjoinNthRoot { .. } => "adjoin-nth-root",
            Command::SolvePositive { .. } => "solve-positive",
            Command::Lemma7Check { .. } => "lemma7-check",
            Command::Lemma8Check { .. } => "lemma8-check",
            Command::Prop1Embed { .. } => "prop1-embed",
            Command::Theorem1Verify { .. } => "theorem1-verify",
            Command::ResidueCheck { .. } => "residue-check",
            Command::Search { .. } => "search",
        }
    }
}

/// Usage problems found after argument parsing.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Group(GroupError),
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Group(e)
    }
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Usage(_) => 2,
        CliError::Group(g) => match g {
            GroupError::Falsified(_) | GroupError::LevinViolation(_) => 1,
            GroupError::ResourceCap(_) | GroupError::ClosureTooLarge { .. } => 3,
            _ => 2,
        },
    }
}

fn error_line(kind: &str, message: &str) -> String {
    let flat: String = message.lines().map(str::trim).collect::<Vec<_>>().join(" ");
    format!("error kind={kind}: {flat}")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("{}", error_line("usage", first));
            return ExitCode::from(2);
        }
    };
    let name = cli.command.name();
    let start = Instant::now();
    let outcome = commands::run(&cli.command, &cli.common);
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    match outcome {
        Ok(report) => {
            match emit(&report, name, &cli.common, elapsed) {
                Ok(out) => print!("{out}"),
                Err(e) => {
                    eprintln!("{}", describe(&e));
                    return ExitCode::from(exit_code(&e));
                }
            }
            if report.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("{}", describe(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}

fn describe(e: &CliError) -> String {
    match e {
        CliError::Usage(m) => error_line("usage", m),
        CliError::Group(g) => error_line(g.kind(), &g.to_string()),
    }
}

fn emit(report: &Report, name: &str, common: &Common, elapsed_ms: f64) -> Result<String, CliError> {
    Ok(match common.format {
        Format::Text => report.to_text(),
        Format::Json => {
            let timing = (!common.no_timing).then_some((elapsed_ms * 1000.0).round() / 1000.0);
            report.to_json(name, timing) + "\n"
        }
        Format::Csv => report
            .csv
            .clone()
            .ok_or_else(|| CliError::Usage(format!("csv output is not available for {name}")))?,
    })
}
