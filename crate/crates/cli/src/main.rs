use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::error::ErrorKind;
use clap::{CommandFactory, FromArgMatches};

mod args;
mod commands;
mod inputs;
mod report;

use args::{Cli, Format};
use report::{emit, CliError};

fn main() -> ExitCode {
    let parsed = Cli::command()
        .try_get_matches()
        .and_then(|m| Ok((Cli::from_arg_matches(&m)?, m.subcommand_name().unwrap_or("").to_string())));
    let (cli, name) = match parsed {
        Ok(ok) => ok,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    let name = name.as_str();
    let json_out = cli.global.format == Format::Json;
    let cfg = match cli.global.search_config() {
        Ok(cfg) => cfg,
        Err(e) => return ExitCode::from(emit(name, Err(e), json_out) as u8),
    };
    let outcome = match cli.global.timeout_s {
        None => commands::run(&cli.command, &cli.global, &cfg),
        Some(secs) => {
            // the worker is abandoned on timeout; the process exits right after
            let (tx, rx) = mpsc::channel();
            let command = cli.command.clone();
            let global = cli.global.clone();
            std::thread::spawn(move || {
                let _ = tx.send(commands::run(&command, &global, &cfg));
            });
            match rx.recv_timeout(Duration::from_secs_f64(secs.max(0.0))) {
                Ok(outcome) => outcome,
                Err(_) => Err(CliError::Unknown(format!("timed out after {secs} s"))),
            }
        }
    };
    ExitCode::from(emit(name, outcome, json_out) as u8)
}
