use std::io::Write;
use std::process::ExitCode;

use franson::cli::{execute, parse_config, CliRequest, SEED_ENV};

fn main() -> ExitCode {
    let env_seed = std::env::var(SEED_ENV).ok();
    let config = match parse_config(std::env::args_os().skip(1), env_seed.as_deref()) {
        Ok(CliRequest::Run(config)) => config,
        Ok(CliRequest::Info(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("franson-sim: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let status = match execute(&config, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("franson-sim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    };
    let _ = out.flush();
    status
}
