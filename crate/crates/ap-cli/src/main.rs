//! `ap`: exact J-invariants, periodicity certificates and constructions.

mod advisory;
mod args;
mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use apsurf::io::{check_bits, max_bits};
use clap::Parser;

use args::{Cli, Command};
use commands::Failure;

fn run(cli: &Cli) -> Result<report::Report, Failure> {
    let bits = max_bits()?;
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Field(a) => commands::field(a),
        Command::Make(c) => commands::make(c),
        Command::Check(c) => commands::check(c, bits),
        Command::Form(c) => commands::form(c, bits),
        Command::Surf(c) => commands::surf(c, bits),
    }?;
    report.elapsed_ms = start.elapsed().as_millis();
    let mut rationals = vec![];
    report::collect_rationals(&report.to_json(), &mut rationals);
    check_bits(&rationals, bits)?;
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"));
            } else {
                print!("{}", report.to_text());
            }
            match report.verdict {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
