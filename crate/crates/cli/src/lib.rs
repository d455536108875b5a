//! Command-line front end: CSV data for the nine figures and verification
//! reports with pass/fail exit codes.
//!
//! Exit codes: 0 when everything passed, 1 on a failed check or a numeric
//! failure, 2 on a usage or configuration error.

// `!(x > 0.0)` rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod figure;
pub mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "hypercs", version, about = "Coherent states from the eigenfunctions of x^r d^{r+1}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the data behind one figure as CSV.
    Figure(FigureArgs),
    /// Run a verification suite and write a tab-separated report.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure number, 1 to 9.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=9))]
    pub id: u8,
    /// Orders r, comma separated. Figures 8 and 9 use the first one.
    #[arg(long = "r", value_delimiter = ',', default_values_t = [1u32, 2, 3], value_parser = clap::value_parser!(u32).range(1..))]
    pub r_values: Vec<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    /// Grid points per axis.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Output path, `-` for standard output.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Eigen,
    State,
    Statistics,
    Moments,
    Nonuniqueness,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Orders r used by the state, statistics, moment and non-uniqueness checks.
    #[arg(long = "r", value_delimiter = ',', default_values_t = [1u32, 2, 3], value_parser = clap::value_parser!(u32).range(1..))]
    pub r_values: Vec<u32>,
    /// Truncation tolerance for the Fock expansions.
    #[arg(long, default_value_t = 1e-12)]
    pub tail_tol: f64,
    /// Smallest real part of the inverse-Mellin contour.
    #[arg(long, allow_negative_numbers = true)]
    pub contour_re: Option<f64>,
    /// Fixed truncation height of the contour.
    #[arg(long)]
    pub im_cutoff: Option<f64>,
    /// Trapezoid step along the contour.
    #[arg(long)]
    pub quad_step: Option<f64>,
    /// Upper end of the moment integrals.
    #[arg(long)]
    pub x_max_integration: Option<f64>,
    /// Output path, `-` for standard output.
    #[arg(long)]
    pub out: PathBuf,
}

/// A rejected configuration; reported with exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let (out, result) = match &cli.command {
        Command::Figure(a) => (&a.out, figure::FigureConfig::from_args(a).map(|c| figure::run_figure(&c))),
        Command::Verify(a) => (&a.out, verify::VerifyConfig::from_args(a).map(|c| Ok(verify::run_verify(&c)))),
    };
    let outcome = match result {
        Err(usage) => {
            eprintln!("error: {usage}");
            return EXIT_USAGE;
        }
        Ok(Err(numeric)) => {
            eprintln!("error: {numeric}");
            return EXIT_FAIL;
        }
        Ok(Ok(outcome)) => outcome,
    };
    if let Err(e) = write_output(out, &outcome.document) {
        eprintln!("error: cannot write {}: {e}", out.display());
        return EXIT_FAIL;
    }
    if outcome.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// A rendered document and whether it counts as a pass.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: String,
    pub passed: bool,
}

fn write_output(path: &PathBuf, document: &str) -> std::io::Result<()> {
    if path.as_os_str() == "-" {
        use std::io::Write;
        std::io::stdout().write_all(document.as_bytes())
    } else {
        std::fs::write(path, document)
    }
}
