use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use opcalc::{run, Cli};

fn main() -> ExitCode {
    let out = run(&Cli::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    ExitCode::from(out.code as u8)
}
