//! `ramanujan`: theta enclosures, tables and proof reports.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 precision ran
//! out before a comparison was decided, 3 usage error, 4 I/O error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use ramanujan_core::ball::{BallError, PrecisionPolicy};
use ramanujan_core::proof::{self, Overall, ProofConfig, Severity, Status, Target};
use ramanujan_core::ramanujan::RamanujanError;

const MAX_BITS_VAR: &str = "STIRLING_MAX_BITS";

#[derive(Parser)]
#[command(name = "ramanujan", version, about = "Certified enclosures of theta_n and replayable monotonicity proofs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Enclose theta_n and print its midpoint with a certified radius.
    Theta {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=1000))]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// One row per n: theta enclosure, envelopes and the certified checks.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        from: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        to: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a proof and optionally write the JSON report.
    Verify {
        #[arg(value_parser = parse_target)]
        target: Target,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse()
}

#[derive(Debug)]
pub enum CliError {
    CheckFailed(String),
    Precision(String),
    Usage(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Precision(_) => 2,
            CliError::Usage(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::CheckFailed(m) | CliError::Precision(m) | CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

impl From<RamanujanError> for CliError {
    fn from(e: RamanujanError) -> Self {
        match e {
            RamanujanError::Ball(BallError::PrecisionExhausted { .. }) => CliError::Precision(e.to_string()),
            RamanujanError::ZeroIndex => CliError::Usage(e.to_string()),
            other => CliError::CheckFailed(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn policy() -> Result<PrecisionPolicy, CliError> {
    let p = PrecisionPolicy::default();
    match std::env::var(MAX_BITS_VAR) {
        Ok(v) => {
            let bits: u32 =
                v.trim().parse().map_err(|_| CliError::Usage(format!("{MAX_BITS_VAR}={v:?} is not a bit count")))?;
            let p = p.with_max_bits(bits);
            p.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(p)
        }
        Err(std::env::VarError::NotPresent) => Ok(p),
        Err(e) => Err(CliError::Usage(format!("{MAX_BITS_VAR}: {e}"))),
    }
}

fn verify(target: Target, report: Option<PathBuf>) -> Result<(), CliError> {
    let cfg = ProofConfig { policy: policy()?, ..ProofConfig::default() };
    let r = proof::verify(target, &cfg);
    if let Some(path) = report {
        std::fs::write(&path, r.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    for s in &r.steps {
        let status = match s.status {
            Status::Verified => "verified",
            Status::Failed => "FAILED",
            Status::Undecided => "UNDECIDED",
        };
        let tag = match s.severity {
            Severity::Hard => "",
            Severity::Soft => " (soft)",
            Severity::Informational => " (info)",
        };
        println!("{status:<10} {}{tag}", s.id);
    }
    let hard = || r.steps.iter().filter(|s| s.severity == Severity::Hard);
    println!("{}: {} steps, overall {:?}", target, r.steps.len(), r.overall);
    match r.overall {
        Overall::Verified => Ok(()),
        Overall::Failed if hard().any(|s| s.status == Status::Failed) => {
            Err(CliError::CheckFailed(format!("{target}: a hard step failed")))
        }
        Overall::Failed => Err(CliError::Precision(format!(
            "{target}: undecided at {} bits; raise {MAX_BITS_VAR}",
            cfg.policy.max_bits
        ))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Theta { n, digits, format } => {
            let text = output::theta(n, digits, format, &policy()?)?;
            print!("{text}");
            Ok(())
        }
        Command::Table { from, to, format, out } => {
            if from > to {
                return Err(CliError::Usage(format!("--from {from} exceeds --to {to}")));
            }
            let rows = output::table_rows(from, to, &policy()?)?;
            let text = output::render_table(&rows, format)?;
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        Command::Verify { target, report } => verify(target, report),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
