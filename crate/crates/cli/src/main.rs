use std::panic;
use std::process::ExitCode;

use altbc_cli::args::Cli;
use altbc_cli::config::merge_config;
use altbc_cli::{emit, run, CliError};
use clap::Parser;

fn fail(e: &CliError) -> ExitCode {
    eprintln!("altbc: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let argv = match merge_config(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => return fail(&e),
    };
    // help and version exit 0, parse errors exit 2
    let cli = Cli::try_parse_from(argv).unwrap_or_else(|e| e.exit());

    let outcome = panic::catch_unwind(|| -> Result<(), CliError> {
        let out = run(&cli)?;
        emit(&cli, &out.body)?;
        match out.failure {
            Some(e) => Err(e),
            None => Ok(()),
        }
    });
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => fail(&e),
        Err(_) => fail(&CliError::Numerical("internal error".into())),
    }
}
