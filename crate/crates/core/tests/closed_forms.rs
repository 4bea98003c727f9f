//! The simplified ensemble means against the raw Gamma-function expressions,
//! evaluated with an independent Gamma implementation.

use erasure::ensemble::closed_form_mean;
use statrs::function::gamma::gamma;
use std::f64::consts::PI;

fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn raw(a: usize, k: usize) -> f64 {
    let kf = k as f64;
    let pref = sign(k) * PI.powf(1.5) / factorial(k);
    match a {
        1 => pref / (2.0 * gamma(0.5 - kf)),
        2 => pref * (13.0 - 22.0 * kf) / (32.0 * gamma(1.5 - kf)),
        3 => pref * (433.0 - 936.0 * kf + 428.0 * kf * kf) / (512.0 * gamma(2.5 - kf)),
        _ => unreachable!(),
    }
}

#[test]
fn simplified_forms_match_gamma_expressions() {
    for a in 1..=3 {
        for k in 1..=15 {
            let expected = raw(a, k);
            let got = closed_form_mean(a, k).unwrap();
            assert!(
                (got - expected).abs() <= 1e-10 * expected.abs(),
                "a={a} K={k}: {got} vs {expected}"
            );
        }
    }
}

#[test]
fn large_environment_asymptotics() {
    // (2K)!/(4^K K!^2) ~ 1/sqrt(pi K), so <C1> ~ sqrt(pi / (4K))
    let k = 30;
    let approx = (PI / (4.0 * k as f64)).sqrt();
    let exact = closed_form_mean(1, k).unwrap();
    assert!((exact / approx - 1.0).abs() < 1e-2);
}
