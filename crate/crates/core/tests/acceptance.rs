//! Prints one PASS/FAIL line per acceptance criterion.
//!
//! The report never aborts the rest of `cargo test`; the strict gate is
//! `thetalg acceptance`, which exits nonzero on any failure.

use thetalg::acceptance::run_all;

fn main() {
    let results = run_all();
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("{status} [{:>2}] {} ({}) [{:.1}s]", r.id, r.title, r.detail, r.elapsed.as_secs_f64());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} passed, {failed} failed", results.len() - failed);
}
