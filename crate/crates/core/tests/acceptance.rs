//! One pass/fail line per acceptance criterion. Run with `--nocapture` to see them.

use minperiod::suite;

const SEED: u64 = 20240917;

#[test]
fn acceptance_criteria() {
    let results = suite::run_all(SEED);
    assert_eq!(results.len(), suite::CRITERIA);
    for r in &results {
        println!("{} ({:.2} s)", r.line(), r.elapsed.as_secs_f64());
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).map(|r| r.index).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
