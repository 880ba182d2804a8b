//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

use std::process::ExitCode;

use splitprob::verify::run_criterion;

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=10u8 {
        let report = run_criterion(id);
        for d in &report.details {
            println!("    {d}");
        }
        println!("{}", report.line());
        if !report.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria PASS");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAIL {failed:?}");
        ExitCode::FAILURE
    }
}
