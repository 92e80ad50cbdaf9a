use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use copic_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    print!("{}", report.stdout);
    let _ = std::io::stdout().flush();
    for note in &report.notes {
        eprintln!("{note}");
    }
    ExitCode::from(report.code as u8)
}
