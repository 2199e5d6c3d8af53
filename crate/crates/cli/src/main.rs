use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use staged_trees::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out).and_then(|()| {
        out.flush()
            .map_err(|e| staged_trees::CliError::io("<stdout>", e))
    }) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("staged-trees: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
