use cutcover::suites::{run_suite, Suite, SuiteOptions};

fn assert_suite(suite: Suite) {
    let report = run_suite(suite, &SuiteOptions::default());
    assert!(!report.assertions.is_empty());
    let failures: Vec<_> = report.failures().collect();
    assert!(failures.is_empty(), "{suite}: {failures:#?}");
}

#[test]
fn values() {
    assert_suite(Suite::Values);
}

#[test]
fn cube() {
    assert_suite(Suite::Cube);
}

#[test]
fn binom() {
    assert_suite(Suite::Binom);
}

#[test]
fn operations() {
    assert_suite(Suite::Operations);
}

#[test]
fn kneser() {
    assert_suite(Suite::Kneser);
}

#[test]
fn polytope() {
    assert_suite(Suite::Polytope);
}

#[test]
fn reports_are_stable() {
    let opts = SuiteOptions { nmax: 40, spectral_nmax: 20 };
    let a = serde_json::to_string(&run_suite(Suite::Polytope, &opts)).unwrap();
    let b = serde_json::to_string(&run_suite(Suite::Polytope, &opts)).unwrap();
    assert_eq!(a, b);
}
