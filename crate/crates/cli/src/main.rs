//! `hartogs` — classifies the Bergman space of a Hartogs domain over a
//! one-dimensional base as trivial or infinite dimensional, constructs
//! explicit basis elements, streams exceedance witnesses, and cross-checks
//! every analytic predicate against a numerical quadrature oracle.
//!
//! Exit status: 0 success; 1 mathematical error (undecidable boundary,
//! exhausted scan); 2 I/O or schema error; 3 oracle disagreement.

mod commands;
mod config;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use commands::VerifyOptions;

#[derive(Debug)]
pub enum CliError {
    Math(hartogs_core::Error),
    Schema(String),
    Io(String),
}

impl From<hartogs_core::Error> for CliError {
    fn from(e: hartogs_core::Error) -> Self {
        CliError::Math(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Math(e) => write!(f, "error: {e}"),
            CliError::Schema(msg) => write!(f, "schema error: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(_) => 1,
            CliError::Schema(_) | CliError::Io(_) => 2,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "hartogs", version, about = "Bergman space dichotomy for Hartogs domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Config file (JSON); reads stdin when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output file; writes stdout when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the Bergman space as zero, infinite, or unknown.
    Classify,
    /// Per-level dimension census and explicit basis elements.
    Basis {
        #[arg(long = "k-max", default_value_t = 10)]
        k_max: u64,
    },
    /// Witness integers k with sum_j {k*alpha_j} > 1.
    Witness {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long = "scan-bound", default_value_t = 100_000)]
        scan_bound: u64,
    },
    /// Cross-check the analytic predicates against the quadrature oracle.
    Verify {
        #[arg(long = "grid-margin", default_value_t = 0.05)]
        grid_margin: f64,
        #[arg(long, default_value_t = 20_000)]
        samples: u32,
        #[arg(long, default_value_t = hartogs_core::quadrature::DEFAULT_SEED)]
        seed: u64,
    },
    /// Everything: classification, census, witnesses, verification.
    Report {
        #[arg(long = "k-max", default_value_t = 10)]
        k_max: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long = "scan-bound", default_value_t = 100_000)]
        scan_bound: u64,
        #[arg(long = "grid-margin", default_value_t = 0.05)]
        grid_margin: f64,
        #[arg(long, default_value_t = 20_000)]
        samples: u32,
        #[arg(long, default_value_t = hartogs_core::quadrature::DEFAULT_SEED)]
        seed: u64,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: &Cli) -> Result<(report::RunReport, u8), CliError> {
    let text = read_input(&cli.input)?;
    let config = config::parse_config(&text)?;
    let report = match &cli.command {
        Command::Classify => commands::run_classify(&config)?,
        Command::Basis { k_max } => commands::run_basis(&config, *k_max)?,
        Command::Witness { count, scan_bound } => {
            commands::run_witness(&config, *count, *scan_bound)?
        }
        Command::Verify {
            grid_margin,
            samples,
            seed,
        } => commands::run_verify(
            &config,
            &VerifyOptions {
                grid_margin: *grid_margin,
                samples: *samples,
                seed: *seed,
            },
        )?,
        Command::Report {
            k_max,
            count,
            scan_bound,
            grid_margin,
            samples,
            seed,
        } => commands::run_report(
            &config,
            *k_max,
            *count,
            *scan_bound,
            &VerifyOptions {
                grid_margin: *grid_margin,
                samples: *samples,
                seed: *seed,
            },
        )?,
    };
    let code = if report.failure() { 3 } else { 0 };
    Ok((report, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((report, code)) => {
            let rendered = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.to_json())
                        .expect("report serializes");
                    s.push('\n');
                    s
                }
                Format::Text => report.to_text(),
            };
            if let Err(e) = write_output(&cli.output, &rendered) {
                eprintln!("{e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
