use std::process::ExitCode;

use clap::Parser;
use clusterchar::quiver::Quiver;
use clusterchar_cli::app::{execute, Cli, CliError, Command};
use clusterchar_cli::server;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Serve { port, host } = &cli.command {
        let quiver = match &cli.quiver {
            Some(path) => match std::fs::read_to_string(path).map_err(|e| e.to_string()).and_then(|s| Quiver::from_json(&s).map_err(|e| e.to_string())) {
                Ok(q) => q,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            },
            None => Quiver::linear_a(4),
        };
        return match server::serve(quiver, host, *port) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::Failed(report) => print!("{report}"),
                CliError::Input(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
