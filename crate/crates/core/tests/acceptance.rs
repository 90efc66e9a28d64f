//! Runs the twelve acceptance checks with exact comparisons and prints one
//! line per check.

use hkl_core::git::DEFAULT_SEED;
use hkl_core::niemeier::builtin_catalog;
use hkl_core::verify::{run_checks, CHECK_NAMES};

#[test]
fn acceptance_suite() {
    let checks = run_checks(&builtin_catalog(), DEFAULT_SEED);
    assert_eq!(checks.len(), CHECK_NAMES.len());
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    assert!(failed.is_empty(), "failed checks: {failed:?}");
}
