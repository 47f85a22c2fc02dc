//! The acceptance suite: one line per criterion, all criteria must pass.
//!
//! Run with output visible:
//!
//! ```sh
//! cargo test -p lucasian --test acceptance -- --nocapture
//! ```
//!
//! The criteria run sequentially inside a single test so that the
//! performance measurement (criterion 8) is not polluted by the parallel
//! sweep (criterion 1).

use lucasian::selftest;

#[test]
fn acceptance_criteria() {
    let reports = selftest::run_all();
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.to_string())
        .collect();
    assert!(
        failed.is_empty(),
        "acceptance criteria failed:\n{}",
        failed.join("\n")
    );
}
