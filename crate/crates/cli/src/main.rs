use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tree_asymptotics_cli::cli::Cli;
use tree_asymptotics_cli::commands::{self, exit};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = match commands::run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(outcome.stdout.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(exit::IO as u8);
            }
            eprint!("{}", outcome.stderr);
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
