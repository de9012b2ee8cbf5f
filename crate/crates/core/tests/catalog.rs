use latsep::catalog::run_catalog;

#[test]
fn every_catalog_claim_holds() {
    let report = run_catalog(None).unwrap();
    for entry in &report.entries {
        for o in &entry.outcomes {
            assert!(o.passed, "{}: {} -> {}", entry.id, o.claim, o.detail);
        }
    }
}
