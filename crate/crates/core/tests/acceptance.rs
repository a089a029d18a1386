//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;

use matchroute::bench::{run_suite, DEFAULT_SEED, SUITES};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for suite in SUITES {
        let report = run_suite(suite, DEFAULT_SEED)
            .expect("known suite")
            .unwrap_or_else(|e| panic!("{suite}: {e}"));
        println!("{}", report.line());
        if !report.passed {
            failed.push(report.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", SUITES.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
