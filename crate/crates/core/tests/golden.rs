//! Regression values computed once with an independent 50-digit
//! implementation and frozen here.

use approx::assert_relative_eq;
use sr_qsd::bounds::{gap_xstar, gap_xstar_upper};
use sr_qsd::changepoint::sadd_report;
use sr_qsd::eigen::{critical_threshold, lambda_lower_gamma, solve_lambda_default};
use sr_qsd::specfun::{QuadratureSpec, RootSpec};

#[test]
fn lambda_values() {
    let table = [
        (1.0, 2.36017),
        (2.0, 0.92211),
        (5.0, 0.29091),
        (10.0, 0.128461),
        (15.0, 0.0810588),
        (20.0, 0.0588561),
        (30.0, 0.0377865),
        (50.0, 0.0218616),
        (100.0, 0.0105631),
    ];
    for (a, l) in table {
        assert_relative_eq!(solve_lambda_default(a).unwrap().lambda(), l, max_relative = 2e-5);
    }
}

#[test]
fn critical_threshold_digits() {
    assert!((critical_threshold().unwrap() - 10.240_465_439_1).abs() < 1e-9);
}

#[test]
fn gamma_lower_bound_at_20() {
    assert_relative_eq!(lambda_lower_gamma(20.0, &QuadratureSpec::default()).unwrap(), 0.05831, max_relative = 1e-4);
}

#[test]
fn sadd_values_and_relative_gaps() {
    let quad = QuadratureSpec::default();
    let table = [
        (15.0, 2.28223, 2.2955, 2.4653, 4.269),
        (20.0, 2.65116, 2.6601, 2.8288, 4.707),
        (30.0, 3.21409, 3.2191, 3.3806, 5.352),
        (50.0, 3.98630, 3.9886, 4.1345, 6.203),
    ];
    for (a, exact, gamma, simple, l5) in table {
        let r = sadd_report(&solve_lambda_default(a).unwrap(), &quad).unwrap();
        assert_relative_eq!(r.sadd_exact, exact, max_relative = 1e-5);
        assert_relative_eq!(r.bound_gamma.unwrap(), gamma, max_relative = 1e-4);
        assert_relative_eq!(r.bound_simple.unwrap(), simple, max_relative = 1e-4);
        assert_relative_eq!(r.bound_l5.unwrap(), l5, max_relative = 1e-3);
        // The gamma bound is the tight one, l5 the loose one.
        let gap = |b: f64| (b - r.sadd_exact) / r.sadd_exact;
        assert!(gap(r.bound_gamma.unwrap()) < gap(r.bound_simple.unwrap()));
        assert!(gap(r.bound_simple.unwrap()) < gap(r.bound_l5.unwrap()));
    }
}

#[test]
fn sadd_at_critical_threshold() {
    let r = sadd_report(&solve_lambda_default(critical_threshold().unwrap()).unwrap(), &QuadratureSpec::default())
        .unwrap();
    assert_relative_eq!(r.sadd_exact, 1.83556, max_relative = 1e-5);
    assert_relative_eq!(r.bound_simple.unwrap(), 2.0221, max_relative = 1e-4);
}

#[test]
fn xstar_values() {
    let root = RootSpec::default();
    for (a, x) in [(15.0, 3.995), (30.0, 5.071), (60.0, 6.197)] {
        let got = gap_xstar(a, &root).unwrap();
        assert!((got - x).abs() < 1e-3, "A={a}: {got}");
    }
    assert!((gap_xstar_upper(30.0).unwrap() - 7.096).abs() < 1e-3);
}
