use std::process::ExitCode;

use clap::Parser;
use lapflow::Cli;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LF_LOG", "warn")).init();
    let cli = Cli::parse();
    match lapflow::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
