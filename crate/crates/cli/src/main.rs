use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use parchern::{run, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    let out = run(&args);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.exit_code as u8)
}
