use std::process::ExitCode;

use clap::Parser;
use horocurve_cli::{run, Cli, UsageError};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli, &argv) {
        Ok(r) => {
            print!("{}", r.stdout);
            let summary = r.report.summary();
            if !summary.is_empty() {
                eprintln!("{summary}");
            }
            ExitCode::from(r.exit)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.downcast_ref::<UsageError>().is_some() { 2 } else { 1 })
        }
    }
}
