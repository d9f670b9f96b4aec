//! Acceptance suite: one PASS/FAIL line per criterion.

use multalg::verify::{Suite, DEFAULT_SEED};

#[test]
fn acceptance() {
    let results = Suite::new(DEFAULT_SEED).run_all();
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
