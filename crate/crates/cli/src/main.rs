mod cli;
mod commands;
mod config;
mod input;
mod output;

use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches};

use crate::cli::Cli;
use crate::commands::{Context, Failure};

fn parse_cli() -> Result<Cli, Failure> {
    let mut cmd = Cli::command().args_override_self(true);
    cmd = cmd.mut_subcommands(|s| s.args_override_self(true));
    let names: Vec<String> = cmd.get_subcommands().map(|s| s.get_name().to_string()).collect();
    let args = config::merge(std::env::args_os().collect(), |a| names.iter().any(|n| n == a))
        .map_err(|m| Failure::Usage(format!("validation error: {m}")))?;
    let matches = cmd.try_get_matches_from(args).unwrap_or_else(|e| e.exit());
    Cli::from_arg_matches(&matches).map_err(|e| e.exit())
}

fn main() -> ExitCode {
    let cli = match parse_cli() {
        Ok(c) => c,
        Err(f) => {
            eprintln!("error: {f}");
            return ExitCode::from(f.exit_code());
        }
    };
    let ctx = Context {
        tol: cli.tol,
        seed: cli.seed,
    };
    let format = cli.format.unwrap_or_else(|| cli.command.default_format());
    let result = match commands::run(&cli.command, &ctx) {
        Ok(v) => output::render(&v, format).map_err(Failure::Io),
        // Failed sweep rows are still written before exiting non-zero.
        Err(Failure::AllRowsFailed(v)) => match output::render(&v, format) {
            Ok(bytes) => output::write(&bytes, cli.out.as_deref())
                .map_err(|e| Failure::Io(e.to_string()))
                .and(Err(Failure::AllRowsFailed(serde_json::Value::Null))),
            Err(e) => Err(Failure::Io(e)),
        },
        Err(f) => Err(f),
    };
    match result.and_then(|bytes| output::write(&bytes, cli.out.as_deref()).map_err(|e| Failure::Io(e.to_string()))) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
