//! Worked instances decoded from JSON, and reproducibility of the suite.

use cuntzkit::models::json::{almost_ordered_instance_from_json, refinable_instance_from_json};
use cuntzkit::models::{check_almost_ordered_sums, check_refinable_sums, Bounds, NBar, ZPrime, Z};
use cuntzkit::suite::{run_selected, SuiteConfig};
use serde_json::json;

#[test]
fn z_instance_from_json_is_a_counterexample() {
    let inst = refinable_instance_from_json(&Z, &json!({"x": [1, 1, "1.1"], "x_prime": [1, 1, "1/2"]}), "").unwrap();
    let r = check_refinable_sums(&Z, &inst, &Bounds::default()).unwrap();
    assert!(r.is_counterexample(), "{:?}", r.log);
}

#[test]
fn the_same_numbers_in_nbar_have_a_witness() {
    let inst = refinable_instance_from_json(&NBar, &json!({"x": [1, 1, 2], "x_prime": [1, 1, 1]}), "").unwrap();
    let r = check_refinable_sums(&NBar, &inst, &Bounds::default()).unwrap();
    assert!(r.verdict.witness().is_some(), "{:?}", r.log);
}

#[test]
fn zprime_instance_from_json_is_a_counterexample() {
    let xs = almost_ordered_instance_from_json(&ZPrime, &json!({"x": [1, "1''"]}), "").unwrap();
    let r = check_almost_ordered_sums(&ZPrime, &xs, &Bounds::default()).unwrap();
    assert!(r.is_counterexample(), "{:?}", r.log);
}

#[test]
fn decoding_errors_name_the_offending_entry() {
    let e = refinable_instance_from_json(&Z, &json!({"x": [1, 1], "x_prime": [1, "-2"]}), "").unwrap_err();
    assert!(e.to_string().contains("x_prime[1]"), "{}", e);
}

#[test]
fn suite_reports_are_reproducible() {
    let ids = ["ordered-sum-identity", "way-below-levels", "sum-join"];
    let cfg = SuiteConfig { seed: 9, cases: 30, mutation: None };
    let a = run_selected(&cfg, &ids).to_json();
    assert_eq!(a, run_selected(&cfg, &ids).to_json());
    assert_eq!(a["passed"], true);
    let other = run_selected(&SuiteConfig { seed: 10, ..cfg }, &ids);
    assert!(other.passed());
}
