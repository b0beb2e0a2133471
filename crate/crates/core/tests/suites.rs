use jetvar_core::suites::{run, SuiteConfig};

fn passes(name: &str) {
    let cfg = SuiteConfig::default();
    let report = run(name, &cfg).unwrap();
    assert!(report.passed(), "{}", serde_json::to_string_pretty(&report).unwrap());
}

#[test]
fn d_squared() {
    passes("d-squared");
}

#[test]
fn split() {
    passes("split");
}

#[test]
fn kolar() {
    passes("kolar");
}

#[test]
fn euler_lagrange() {
    passes("euler-lagrange");
}

#[test]
fn special() {
    passes("special");
}

#[test]
fn structure() {
    passes("structure");
}

#[test]
fn uniqueness_one() {
    passes("uniqueness-1");
}

#[test]
fn uniqueness_two() {
    passes("uniqueness-2");
}

#[test]
fn uniqueness_curve() {
    passes("uniqueness-curve");
}

#[test]
fn special_counterexample() {
    passes("special-counterexample");
}

#[test]
fn poincare_cartan() {
    passes("poincare-cartan");
}

#[test]
fn round_trip() {
    passes("round-trip");
}

#[test]
fn unknown_suite_is_an_error() {
    assert!(run("nope", &SuiteConfig::default()).is_err());
}
