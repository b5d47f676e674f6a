use std::process::ExitCode;

use clap::Parser;
use lipcheb_cli::{run, Cli, Outcome};

fn main() -> ExitCode {
    // Usage errors exit with status 2 through clap.
    let cli = Cli::parse();
    match run(cli, &mut std::io::stdout().lock()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ViolationsFound) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
