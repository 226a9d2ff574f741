//! Acceptance suite: one PASS/FAIL line per criterion, then a nonzero exit
//! if any criterion failed. Checks that share a criterion are combined.
//!
//! `ACCEPTANCE_SEED` overrides the default seed 42.

use exact_svar::config::Settings;
use exact_svar::verify::{CheckResult, Suite, Verifier};
use std::collections::BTreeMap;

fn main() {
    let seed = std::env::var("ACCEPTANCE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let v = Verifier::new(Settings::default(), seed);
    let results = v.run_suite(Suite::All);
    let mut by_criterion: BTreeMap<u32, Vec<&CheckResult>> = BTreeMap::new();
    for r in &results {
        by_criterion.entry(r.criterion).or_default().push(r);
    }
    let mut failed = 0;
    for (c, checks) in &by_criterion {
        let pass = checks.iter().all(|r| r.pass);
        let secs: f64 = checks.iter().map(|r| r.elapsed_s).sum();
        let detail: Vec<String> = checks.iter().map(|r| format!("{}: {}", r.id, r.detail)).collect();
        println!(
            "criterion {c:>2} {} ({secs:.1} s) {}",
            if pass { "PASS" } else { "FAIL" },
            detail.join(" | ")
        );
        if !pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", by_criterion.len() - failed, by_criterion.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
