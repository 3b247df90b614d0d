//! Command-line front end: verification suites over a list of dimensions,
//! analysis of weight files, and basis / transfer-matrix dumps.
//!
//! Exit codes: 0 when every claim passes, 1 when a claim fails, 2 for usage
//! or input errors.

pub mod commands;
pub mod config;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hwmap::ChiConvention;
use serde::Serialize;

use crate::config::{resolve_tolerance, SuiteConfig, DEFAULT_DIMENSIONS, TOLERANCE_ENV};
use crate::report::{flatten_table, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hwmap", version, about = "Heisenberg-Weyl observables, maps and their checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Observable convention, `+` or `-`.
    #[arg(long, global = true, value_parser = parse_chi)]
    pub chi: Option<ChiConvention>,
    /// Comparison tolerance.
    #[arg(long, global = true, env = TOLERANCE_ENV, hide_env_values = true)]
    pub tol: Option<String>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the verification suites.
    Verify {
        /// Dimensions to check, comma separated.
        #[arg(long = "dims", alias = "d", value_delimiter = ',', value_parser = clap::value_parser!(usize))]
        dims: Option<Vec<usize>>,
        #[command(flatten)]
        common: Common,
    },
    /// Analyze the map built from a weight file.
    Channel {
        #[arg(long)]
        weights: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Dump the mutually unbiased bases of an odd prime dimension.
    Mub {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Dump the transfer matrix of the map built from a weight file.
    Rmatrix {
        #[arg(long)]
        weights: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Qutrit case-study report; defaults to the reduction-map weights.
    #[command(name = "case-study-d3")]
    CaseStudyD3 {
        #[arg(long)]
        weights: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_chi(s: &str) -> std::result::Result<ChiConvention, String> {
    s.parse::<ChiConvention>().map_err(|e| e.to_string())
}

fn tolerance(common: &Common) -> Result<f64> {
    let flag = match common.tol.as_deref() {
        None => None,
        Some(text) => Some(text.trim().parse::<f64>().with_context(|| format!("--tol {text:?} is not a number"))?),
    };
    resolve_tolerance(flag, None)
}

fn emit(common: &Common, json: String, table: impl FnOnce() -> String) -> Result<()> {
    let text = match common.format {
        Format::Json => json,
        Format::Table => table(),
    };
    match &common.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).context("cannot write to stdout")
        }
    }
}

fn emit_value<T: Serialize>(common: &Common, value: &T) -> Result<()> {
    let json = serde_json::to_string_pretty(value)? + "\n";
    emit(common, json, || flatten_table(&serde_json::to_value(value).expect("report serializes")))
}

fn chi_or_default(common: &Common) -> ChiConvention {
    common.chi.unwrap_or_default()
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Verify { dims, common } => {
            let dims = dims.unwrap_or_else(|| DEFAULT_DIMENSIONS.to_vec());
            let config =
                SuiteConfig::new(dims, tolerance(&common)?, chi_or_default(&common), common.seed, common.out.clone())?;
            let report = VerificationReport::new(&config, suites::run_all(&config));
            emit(&common, report.to_json(), || report.to_table())?;
            Ok(if report.all_pass() { EXIT_OK } else { EXIT_CLAIM_FAILED })
        }
        Command::Channel { weights, common } => {
            let (w, chi) = commands::load_weights(&weights, common.chi)?;
            emit_value(&common, &commands::channel(&w, chi, tolerance(&common)?)?)?;
            Ok(EXIT_OK)
        }
        Command::Mub { d, common } => {
            emit_value(&common, &commands::mub(d, chi_or_default(&common))?)?;
            Ok(EXIT_OK)
        }
        Command::Rmatrix { weights, common } => {
            let (w, chi) = commands::load_weights(&weights, common.chi)?;
            emit_value(&common, &commands::rmatrix(&w, chi, tolerance(&common)?)?)?;
            Ok(EXIT_OK)
        }
        Command::CaseStudyD3 { weights, common } => {
            let loaded = weights.as_deref().map(|p: &Path| commands::load_weights(p, common.chi)).transpose()?;
            let chi = loaded.as_ref().map_or_else(|| chi_or_default(&common), |(_, c)| *c);
            emit_value(&common, &commands::case_study(loaded.as_ref().map(|(w, _)| w), chi)?)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}
