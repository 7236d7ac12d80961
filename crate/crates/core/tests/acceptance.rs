//! Runs every acceptance criterion and prints one pass/fail line each.

use equisphere::verify::{run_all, CriterionReport};

fn report(r: &CriterionReport) {
    println!("{}", r.summary_line());
    for c in r.checks.iter().filter(|c| !c.passed) {
        println!("    {}: {}", c.name, c.detail);
    }
}

#[test]
fn acceptance_criteria() {
    let reports = run_all();
    assert_eq!(reports.len(), 8);
    for r in &reports {
        report(r);
    }
    let failed: Vec<usize> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
