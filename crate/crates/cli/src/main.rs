mod args;
mod commands;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{CommandFactory, Parser};

use args::Cli;
use commands::Failure;

const VERIFICATION_FAILED: u8 = 1;
const USAGE: u8 = 2;
const BUDGET_EXHAUSTED: u8 = 3;

/// Turns `key = value` lines into long flags. `true` and `false` switch
/// boolean flags on or leave them off.
fn config_flags(path: &Path) -> anyhow::Result<Vec<OsString>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut flags = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("{}:{}: expected key = value", path.display(), i + 1);
        };
        let key = key.trim().replace('_', "-");
        if key == "config" {
            bail!("{}:{}: config files cannot include others", path.display(), i + 1);
        }
        match value.trim() {
            "false" => {}
            "true" => flags.push(format!("--{key}").into()),
            value => flags.extend([format!("--{key}").into(), value.into()]),
        }
    }
    Ok(flags)
}

/// Inserts the config file's flags straight after the subcommand, so that
/// anything given explicitly later on the command line overrides them.
fn with_config(argv: Vec<OsString>) -> anyhow::Result<Vec<OsString>> {
    let mut config = None;
    for (i, arg) in argv.iter().enumerate() {
        let arg = arg.to_string_lossy();
        if let Some(path) = arg.strip_prefix("--config=") {
            config = Some(path.to_owned());
        } else if arg == "--config" {
            config = argv.get(i + 1).map(|p| p.to_string_lossy().into_owned());
        }
    }
    let Some(config) = config else {
        return Ok(argv);
    };
    let flags = config_flags(Path::new(&config))?;
    let command = Cli::command();
    let at = argv
        .iter()
        .position(|a| command.find_subcommand(a).is_some())
        .map_or(argv.len(), |i| i + 1);
    let mut merged = argv;
    merged.splice(at..at, flags);
    Ok(merged)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let argv = match with_config(std::env::args_os().collect()) {
        Ok(argv) => argv,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(USAGE);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { USAGE } else { 0 });
        }
    };

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let outcome = commands::run(cli, &mut out);
    let flushed = out.flush();
    match outcome {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(USAGE),
        Err(Failure::Verification) => ExitCode::from(VERIFICATION_FAILED),
        Err(Failure::BudgetExhausted(reason)) => {
            eprintln!("error: {reason}");
            ExitCode::from(BUDGET_EXHAUSTED)
        }
        Err(Failure::Input(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(USAGE)
        }
    }
}
