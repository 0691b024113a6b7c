//! Prints one PASS/FAIL line per acceptance criterion. Runs without the
//! libtest harness so the lines always show; exits non-zero on any failure.

use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let start = Instant::now();
    let results = boolalg_verify::run_all();
    for c in &results {
        println!("{}", c.line());
    }
    let failed = results.iter().filter(|c| !c.passed()).count();
    println!("acceptance: {} passed, {failed} failed, {:.1} s", results.len() - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
