//! `bhk`: exact verification runs over the Schwarzschild master equation.

mod pipelines;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use bhk_core::evidence::ScanFamily;
use bhk_core::hautot::Basis;
use bhk_core::master::PerturbationKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::pipelines::VerifyConfig;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "bhk", version, about = "Liouvillian solutions of the Schwarzschild master equation, checked exactly")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,

    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exponent families of the n = 1 branch and their retention, plus the n = 2 candidates
    Families {
        /// gravitational (-3), electromagnetic (0) or scalar (1)
        #[arg(long, default_value = "gravitational", value_parser = parse_kind)]
        beta: PerturbationKind,

        /// Angular index; defaults to the smallest radiating value.
        #[arg(long)]
        l: Option<u32>,
    },

    /// Closed-form polynomial at the special frequency and its four checks
    Chandra {
        #[arg(long, default_value_t = 2)]
        l: u32,
    },

    /// Expansion of the special polynomial in Kummer or Laguerre functions
    Hautot {
        #[arg(long, default_value_t = 2)]
        l: u32,

        #[arg(long, default_value = "kummer", value_parser = parse_basis)]
        basis: Basis,
    },

    /// Determinant sign scan for G3, E3 and E7
    Evidence {
        /// G3, E3, E7 or all
        #[arg(long, default_value = "all")]
        family: String,

        #[arg(long, default_value_t = 20)]
        l_max: u32,

        #[arg(long, default_value_t = 500)]
        max_degree: u64,
    },

    /// Every check at moderate bounds
    VerifyAll {
        #[arg(long, default_value_t = 6)]
        l_max: u32,

        #[arg(long, default_value_t = 100)]
        max_degree: u64,

        /// Largest 2s for the S3 nullspace oracle.
        #[arg(long, default_value_t = 40)]
        two_s_max: u64,

        /// Treat known discrepancies as failures.
        #[arg(long)]
        strict: bool,
    },
}

fn parse_kind(s: &str) -> Result<PerturbationKind, String> {
    s.parse().map_err(|e: bhk_core::master::ModeError| e.to_string())
}

fn parse_basis(s: &str) -> Result<Basis, String> {
    s.parse().map_err(|e: bhk_core::Error| e.to_string())
}

fn parse_families(s: &str) -> Result<Vec<ScanFamily>, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(ScanFamily::ALL.to_vec());
    }
    let mut out = s
        .split(',')
        .map(|p| p.trim().parse::<ScanFamily>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("BHK_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("BHK_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Human => report.to_human(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let format = if cli.json { Format::Json } else { cli.format };

    let (result, strict) = match cli.command {
        Command::Families { beta, l } => (pipelines::families(beta, l.unwrap_or(beta.min_l())), false),
        Command::Chandra { l } => (pipelines::chandra(l), false),
        Command::Hautot { l, basis } => (pipelines::hautot(l, basis), false),
        Command::Evidence { family, l_max, max_degree } => match parse_families(&family) {
            Ok(families) => (pipelines::evidence(families, l_max, max_degree), false),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        Command::VerifyAll { l_max, max_degree, two_s_max, strict } => {
            (pipelines::verify_all(&VerifyConfig { l_max, max_degree, two_s_max, strict }), strict)
        }
    };

    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let text = render(&report, format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if report.ok(strict) { ExitCode::SUCCESS } else { ExitCode::from(1) }
}
