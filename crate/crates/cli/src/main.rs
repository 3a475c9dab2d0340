use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = qadpa::Cli::parse();
    let stdout = std::io::stdout();
    match qadpa::run(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qadpa: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
