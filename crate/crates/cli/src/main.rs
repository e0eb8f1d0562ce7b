use std::process::ExitCode;

use clap::Parser;

use rjspectral_cli::args::{Cli, Command};
use rjspectral_cli::commands;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();

    let result = match &cli.command {
        Command::Solve(a) => commands::cmd_solve(a),
        Command::Tables(a) => commands::cmd_tables(a),
        Command::Sweep(a) => commands::cmd_sweep(a),
        Command::Ldiag(a) => commands::cmd_ldiag(a),
        Command::Oracle(a) => commands::cmd_oracle(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: not every solve converged");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
