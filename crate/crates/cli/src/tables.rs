//! `qpsc tables`: the low-excitation splitting tables and level-shift
//! rows at the degenerate aspect ratio.

use std::process::ExitCode;

use qpsc::perturbation::{paper_tables, Coupling};

use crate::{parse_potential_arg, write_output, Failure, Format, TablesArgs, EXIT_FLAG_ERROR};

pub fn run(args: TablesArgs) -> Result<ExitCode, Failure> {
    if !(args.length.is_finite() && args.length > 0.0) {
        return Err(Failure::new(EXIT_FLAG_ERROR, "--L must be positive"));
    }
    if !args.beta.is_finite() {
        return Err(Failure::new(EXIT_FLAG_ERROR, "--beta must be finite"));
    }
    let spec = parse_potential_arg(&args.potential)?;
    let report = paper_tables(&spec, Coupling(args.beta), args.length)?;
    let content = match args.out.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    write_output(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}
