use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use env_logger::Env;

use workbench::cli::{render, run, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(Env::new().filter_or("WORKBENCH_LOG", "error")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => match writeln!(io::stdout().lock(), "{}", render(&out, cli.format)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
