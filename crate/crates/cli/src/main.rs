mod args;
mod commands;
mod error;
mod report;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use efp_core::with_precision;
use serde_json::json;

use args::{Cli, Command, Format};
use error::{CliError, CliResult};
use report::{Report, SCHEMA};

/// Exit status when a verification run finds a failing instance.
const EXIT_VERIFY_FAILED: u8 = 1;

fn build(cli: &Cli) -> CliResult<Report> {
    let bits = cli.precision_bits;
    with_precision(bits, || match &cli.command {
        Command::Eval(a) => commands::eval(a, bits),
        Command::Poly(p) => commands::poly(p, bits),
        Command::Verify(v) => commands::verify(v, bits),
        Command::Asym(a) => commands::asym(a, bits),
    })
}

fn emit(cli: &Cli, report: &Report) -> CliResult<()> {
    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    };
    match cli.format {
        Format::Json => report.write_json(&mut out)?,
        Format::Csv => report.write_csv(&mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn fail(e: &CliError) -> ExitCode {
    let body = json!({ "schema": SCHEMA, "error": { "kind": e.kind(), "message": e.to_string() } });
    eprintln!("{body}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match build(&cli) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if let Err(e) = emit(&cli, &report) {
        return fail(&e);
    }
    match report.pass {
        Some(false) => ExitCode::from(EXIT_VERIFY_FAILED),
        _ => ExitCode::SUCCESS,
    }
}
