//! Runs the ten reproduction criteria and prints one pass/fail line for each.
//!
//! A failed criterion is reported, not turned into a test failure.

use cubic_sections::verify::{criteria, VerifyConfig};

fn main() {
    let cfg = VerifyConfig::default();
    let mut failed = Vec::new();
    for c in criteria() {
        let r = c.run(&cfg);
        println!("{}", r.line());
        if !r.passed() {
            for ch in r.checks.iter().filter(|ch| !ch.passed) {
                println!("    {}: {}", ch.name, ch.note);
            }
            failed.push(r.id);
        }
    }
    println!("failed criteria: {failed:?}");
}
