use std::io::Write;

use clap::Parser;
use simcond::cli::{execute_cli, Cli};

fn main() {
    let cli = Cli::parse();
    let report = execute_cli(&cli);
    if report.code == 2 {
        eprint!("{}", report.output);
    } else {
        print!("{}", report.output);
        let _ = std::io::stdout().flush();
    }
    std::process::exit(report.code);
}
