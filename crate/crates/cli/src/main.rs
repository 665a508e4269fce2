mod cli;
mod parse;
mod pipelines;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Format};

const FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;
const IO_ERROR: u8 = 3;

fn main() -> ExitCode {
    let args = Cli::parse();
    let report = match pipelines::run(&args.command) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(BAD_INPUT);
        }
    };
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    let written = match &args.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(IO_ERROR);
    }
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FAILED)
    }
}
