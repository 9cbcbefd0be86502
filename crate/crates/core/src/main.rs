use std::io;
use std::process::ExitCode;

use clap::Parser;
use graceful::cli::{run, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let (mut out, mut err) = (io::stdout().lock(), io::stderr());
    match run(&config, &mut out, &mut err) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.kind.code() as u8)
        }
    }
}
