//! Acceptance suite: one test per top-level claim, each printing a PASS/FAIL
//! line. Exact claims run at zero tolerance; numeric claims at the stated
//! tolerances; timed claims assert their runtime budget.

use planar_moments::verify::{self, SuiteReport};
use std::time::Duration;

fn assert_suite(criterion: &str, report: &SuiteReport, budget: Option<Duration>) {
    println!("ACCEPTANCE {criterion}: {report}");
    assert!(
        report.passed(),
        "criterion {criterion} failed: {:?}",
        report.failures
    );
    if let Some(b) = budget {
        assert!(
            report.elapsed <= b,
            "criterion {criterion} exceeded its {b:?} budget: {:?}",
            report.elapsed
        );
    }
}

#[test]
fn criterion_01_cross_formula_complex() {
    let r = verify::cross_formula_complex();
    assert_suite("1 cross-formula (complex)", &r, Some(Duration::from_secs(30)));
}

#[test]
fn criterion_02_cross_formula_symplectic() {
    let r = verify::cross_formula_symplectic();
    assert_suite(
        "2 cross-formula (symplectic)",
        &r,
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_03_closed_form_reductions() {
    let r = verify::closed_forms();
    assert_suite("3 closed-form reductions", &r, None);
}

#[test]
fn criterion_04_scaling_relation() {
    let r = verify::scaling_relation();
    assert_suite("4 holomorphic scaling relation", &r, None);
}

#[test]
fn criterion_05_asymptotic_coefficients() {
    let r = verify::asymptotic_coefficients();
    assert_suite("5 expansion coefficients", &r, None);
}

#[test]
fn criterion_06_laguerre_limits() {
    let r = verify::laguerre_limits();
    assert_suite("6 Wishart limit", &r, Some(Duration::from_secs(300)));
}

#[test]
fn criterion_07_elliptic_law() {
    let r = verify::elliptic_law();
    assert_suite("7 elliptic-law moments", &r, None);
}

#[test]
fn criterion_08_genus_expansion() {
    let r = verify::genus_expansion();
    assert_suite("8 genus expansion", &r, None);
}

#[test]
fn criterion_09_hermitian_limits() {
    let r = verify::hermitian_limits();
    assert_suite("9 Hermitian-limit identities", &r, None);
}

#[test]
fn criterion_10_quadrature_oracle() {
    let r = verify::oracle_agreement();
    assert_suite("10 quadrature oracle", &r, Some(Duration::from_secs(300)));
}

#[test]
fn criterion_11_a_coefficients() {
    let r = verify::a_coefficients();
    assert_suite("11 coefficient machinery", &r, None);
}
