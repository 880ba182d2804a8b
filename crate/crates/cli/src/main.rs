use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use splitprob::output::{resolve, write_file};
use splitprob::{commands, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let output = match commands::run(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let rendered = output.render(config.format);
    match &config.output {
        Some(path) => {
            if let Err(e) = write_file(&resolve(path), &rendered) {
                eprintln!("error: {}", e.message());
                return ExitCode::from(e.exit_code() as u8);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(rendered.as_bytes());
        }
    }
    if output.passed { ExitCode::SUCCESS } else { ExitCode::from(1) }
}
