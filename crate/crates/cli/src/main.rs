use std::process::ExitCode;

use clap::Parser;
use ordiso_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(e) => {
            eprintln!("ordiso: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
