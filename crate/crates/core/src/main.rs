use std::process::ExitCode;

use clap::Parser;
use linform::cli::{render, run, Args, EXIT_ERROR};

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(outcome) => {
            print!("{}", render(&outcome.report, args.format));
            ExitCode::from(outcome.exit as u8)
        }
        Err(e) => {
            eprintln!("linform: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
