mod args;
mod commands;
mod error;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::Exit;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                // Usage errors are input errors; 2 is reserved for undefined results.
                _ => ExitCode::from(Exit::Input as u8),
            };
        }
    };

    let outcome = match &cli.command {
        Command::Metrics(a) => commands::metrics(a),
        Command::FitConstant(a) => commands::fit_constant(a),
        Command::FitLinear(a) => commands::fit_linear(a),
        Command::Profile(a) => commands::profile(a),
        Command::Experiment(a) => commands::experiment(a),
        Command::Calibrate(a) => commands::calibrate(a),
    };

    match outcome {
        Ok(mut outcome) => {
            outcome.doc.set("format", cli.format.name());
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(outcome.doc.render(cli.format).as_bytes())
                .is_err()
            {
                return ExitCode::from(Exit::Input as u8);
            }
            if outcome.exit == Exit::Undefined {
                eprintln!("agreeloss: some requested values are undefined for this input");
            }
            ExitCode::from(outcome.exit as u8)
        }
        Err(e) => {
            eprintln!("agreeloss: error: {e}");
            ExitCode::from(e.exit() as u8)
        }
    }
}
