mod args;
mod combine;
mod document;
mod failure;
mod gen;
mod parse;
mod render;
mod report;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use failure::{Failure, EXIT_NOT_CERTIFIED};

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::io(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{}", text.trim_end()).map_err(|e| Failure::io(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Gen(a) => {
            emit(&gen::run(&a)?.to_json(), a.output.as_deref())?;
            Ok(true)
        }
        Command::Combine(a) => {
            emit(&combine::run(&a.op)?.to_json(), a.output.as_deref())?;
            Ok(true)
        }
        Command::Render(a) => {
            emit(&render::render(&a)?, a.output.as_deref())?;
            Ok(true)
        }
        Command::Verify(a) => report::verify(&a).and_then(|o| finish(o, a.output.as_deref())),
        Command::Content(a) => report::content(&a).and_then(|o| finish(o, a.output.as_deref())),
        Command::Classify(a) => report::classify_cmd(&a).and_then(|o| finish(o, a.output.as_deref())),
        Command::Nikolskii(a) => report::nikolskii(&a).and_then(|o| finish(o, a.output.as_deref())),
    }
}

fn finish(o: report::Outcome, output: Option<&Path>) -> Result<bool, Failure> {
    emit(&o.json, output)?;
    Ok(o.certified)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return Failure::usage(e.render().to_string().trim_end()).report(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_NOT_CERTIFIED),
        Err(f) => f.report(),
    }
}
