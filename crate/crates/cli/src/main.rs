//! Command-line interface: spectra, splitting tables, and the oracle
//! verification suite.
//!
//! Exit codes are stable so scripts can discriminate failure modes:
//! 0 success, 1 verification or runtime failure, 2 flag errors,
//! 3 potential parse errors, 4 inadmissible potential.

mod spectrum;
mod tables;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use qpsc::report::fmt_text;
use qpsc::{CylinderGeometry, Error, PotentialSpec};

pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_FLAG_ERROR: u8 = 2;
pub const EXIT_PARSE_ERROR: u8 = 3;
pub const EXIT_INADMISSIBLE: u8 = 4;

/// Directory joined onto relative `--output` paths when set.
pub const OUTPUT_DIR_ENV: &str = "QPSC_OUTPUT_DIR";

#[derive(Parser)]
#[command(
    name = "qpsc",
    version,
    about = "Spectrum and Stark-type splitting analysis of a particle on a cylinder surface",
    long_about = "Computes the exact spectrum of a quantum particle confined to a cylinder \
surface, applies first-order perturbation theory for potentials beta*z*V(theta), and \
verifies every closed form against quadrature and exact-diagonalization oracles.\n\n\
Floats are printed with 17 significant digits in JSON/CSV (round-trip exact) and 6 in \
text tables. Identical invocations produce byte-identical output. Relative --output \
paths are joined onto $QPSC_OUTPUT_DIR when that variable is set.\n\n\
Exit codes: 0 success, 1 verification/runtime failure, 2 flag error, 3 potential parse \
error, 4 inadmissible potential."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate energy levels and their degeneracy groups.
    #[command(group = ArgGroup::new("geometry_mode").required(true).args(["radius", "degenerate"]))]
    Spectrum(SpectrumArgs),
    /// Low-excitation secular blocks, corrections, and level shifts at the
    /// degenerate aspect ratio R_o = L/pi.
    Tables(TablesArgs),
    /// Cross-check closed forms against quadrature and exact
    /// diagonalization; exits 0 only if every check passes.
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct SpectrumArgs {
    /// Cylinder length L.
    #[arg(long = "L", default_value_t = 1.0)]
    pub length: f64,
    /// Explicit cylinder radius R_o (exclusive with --degenerate).
    #[arg(long = "R")]
    pub radius: Option<f64>,
    /// Use the degenerate aspect ratio R_o = L/pi.
    #[arg(long)]
    pub degenerate: bool,
    /// Particle mass m.
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    /// Action constant hbar.
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    /// Enumeration bounds: max n_z and max n_theta.
    #[arg(long, num_args = 2, value_names = ["NZ", "NTHETA"], default_values_t = [6u32, 6u32])]
    pub max: Vec<u32>,
    /// Relative tolerance for grouping degenerate energies.
    #[arg(long, default_value_t = 1e-9)]
    pub group_tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct TablesArgs {
    /// Cylinder length L (the radius is fixed to L/pi).
    #[arg(long = "L", default_value_t = 1.0)]
    pub length: f64,
    /// Accepted for symmetry with the other commands; tables always use
    /// the degenerate aspect ratio.
    #[arg(long)]
    pub degenerate: bool,
    /// Perturbing profile V(theta) in the potential DSL.
    #[arg(long, default_value = "1.0*cos(theta)")]
    pub potential: String,
    /// Coupling constant beta.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub beta: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Cylinder length L.
    #[arg(long = "L", default_value_t = 1.0)]
    pub length: f64,
    /// Explicit cylinder radius R_o. Defaults to the degenerate aspect
    /// ratio L/pi when neither --R nor --degenerate is given.
    #[arg(long = "R", conflicts_with = "degenerate")]
    pub radius: Option<f64>,
    /// Use the degenerate aspect ratio R_o = L/pi (the default).
    #[arg(long)]
    pub degenerate: bool,
    /// Perturbing profile V(theta) in the potential DSL.
    #[arg(long, default_value = "1.0*cos(theta)")]
    pub potential: String,
    /// Coupling strengths for the slope checks, descending.
    #[arg(long, num_args = 1.., default_values_t = [1e-2, 1e-3, 1e-4])]
    pub betas: Vec<f64>,
    /// Truncated-basis bounds for the exact-diagonalization oracle.
    #[arg(long, num_args = 2, value_names = ["NZ", "NTHETA"], default_values_t = [12u32, 12u32])]
    pub oracle_basis: Vec<u32>,
    /// Treat the potential as expected-inadmissible and confirm its first
    /// moments are genuinely complex (the monomial sweep runs too).
    #[arg(long)]
    pub check_complexity: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output path; stdout when omitted. Relative paths are joined onto
    /// $QPSC_OUTPUT_DIR when set.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Clap exits 0 for --help/--version and 2 for usage errors.
            err.exit();
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Parse { .. } => EXIT_PARSE_ERROR,
            Error::Inadmissible(report) => {
                return Failure::new(
                    EXIT_INADMISSIBLE,
                    format!(
                        "potential is not admissible: I1 = ({}, {}), I2 = ({}, {}); \
                         first moments must be real and nonzero",
                        fmt_text(report.i1.re),
                        fmt_text(report.i1.im),
                        fmt_text(report.i2.re),
                        fmt_text(report.i2.im),
                    ),
                );
            }
            Error::InvalidArgument(_) | Error::InvalidGeometry(_) => EXIT_FLAG_ERROR,
            _ => EXIT_VERIFY_FAILED,
        };
        Failure::new(code, err.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::new(EXIT_VERIFY_FAILED, format!("i/o error: {err}"))
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Spectrum(args) => spectrum::run(args),
        Command::Tables(args) => tables::run(args),
        Command::Verify(args) => verify::run(args),
    }
}

pub fn parse_potential_arg(text: &str) -> Result<PotentialSpec, Failure> {
    qpsc::parse_potential(text).map_err(Failure::from)
}

pub fn geometry_from(
    radius: Option<f64>,
    degenerate_flag: bool,
    length: f64,
    mass: f64,
    hbar: f64,
    default_degenerate: bool,
) -> Result<CylinderGeometry, Failure> {
    let geom = match radius {
        Some(r) => CylinderGeometry::with_constants(r, length, mass, hbar),
        None if degenerate_flag || default_degenerate => {
            CylinderGeometry::with_constants(length / std::f64::consts::PI, length, mass, hbar)
        }
        None => {
            return Err(Failure::new(
                EXIT_FLAG_ERROR,
                "one of --R or --degenerate is required",
            ))
        }
    };
    geom.map_err(|err| Failure::new(EXIT_FLAG_ERROR, err.to_string()))
}

/// Writes the rendered report to stdout or to the resolved output path.
pub fn write_output(out: &OutputArgs, content: &str) -> Result<(), Failure> {
    match &out.output {
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            let resolved = if path.is_relative() {
                match std::env::var_os(OUTPUT_DIR_ENV) {
                    Some(dir) => PathBuf::from(dir).join(path),
                    None => path.clone(),
                }
            } else {
                path.clone()
            };
            std::fs::write(&resolved, content.as_bytes())
                .map_err(|err| Failure::new(EXIT_VERIFY_FAILED, format!("cannot write {}: {err}", resolved.display())))
        }
    }
}
