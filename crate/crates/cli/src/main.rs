mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use lc_core::LcError;

use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(
        "zero is a root (|Cn| < 1e-300); move it away with `lc shift --shift RE,IM` and solve the shifted polynomial"
    )]
    ZeroRoot,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<CliError>() {
        return match e {
            CliError::Usage(_) => 2,
            CliError::ZeroRoot => 3,
        };
    }
    match err.downcast_ref::<LcError>() {
        Some(
            LcError::Parse(_)
            | LcError::Config(_)
            | LcError::Partition(_)
            | LcError::Degree { .. }
            | LcError::EmptyRoots,
        ) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Solve {
            input,
            sweep,
            output,
            shift,
        } => commands::cmd_solve(&input, &sweep, &output, shift.as_deref()),
        Command::Map {
            input,
            sweep,
            output,
            plot_data,
        } => commands::cmd_map(&input, &sweep, &output, plot_data),
        Command::Frame {
            input,
            theta,
            optimizer,
        } => commands::cmd_frame(&input, &theta, &optimizer),
        Command::Shift { input, shift } => commands::cmd_shift(&input, &shift),
        Command::Quartic { input } => commands::cmd_quartic(&input),
        Command::Serve { port, max_n } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(lc_service::serve(port, lc_service::AppState::new(max_n)))
        }
    }
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "warn".into()))
        .with_writer(std::io::stderr)
        .without_time()
        .init();
    // clap exits with 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
