//! `listcolour`: every command writes a JSON run record (the experiment
//! sweep writes CSV) and a one-line summary.
//!
//! Exit codes: 0 computed, 2 negative verdict, 3 budget exhausted, 4 bad input.

mod args;
mod artifact;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use commands::{Body, Status};

const NEGATIVE: u8 = 2;
const BUDGET: u8 = 3;
const BAD_INPUT: u8 = 4;

fn exit_code_of(error: &anyhow::Error) -> u8 {
    match error.chain().find_map(|e| e.downcast_ref::<listcolour::Error>()) {
        Some(listcolour::Error::Resource(_)) => BUDGET,
        _ => BAD_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(BAD_INPUT),
            };
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(BAD_INPUT);
        }
    }
    let outcome = commands::run(cli.command).and_then(|run| {
        match &run.body {
            Body::Record(record) => artifact::emit(record, cli.out.as_deref())?,
            Body::Csv(text) => match cli.out.as_deref() {
                Some(path) => artifact::write_text(path, text)?,
                None => print!("{text}"),
            },
        }
        // the summary goes wherever the record does not
        if cli.out.is_some() {
            println!("{}", run.summary);
        } else {
            eprintln!("{}", run.summary);
        }
        Ok(run.status)
    });
    match outcome {
        Ok(Status::Done) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(NEGATIVE),
        Ok(Status::Budget) => ExitCode::from(BUDGET),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_of(&e))
        }
    }
}
