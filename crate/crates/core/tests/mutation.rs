//! The theorem suite must notice a broken sub-fidelity.

use erasure::measures::hs_overlap;
use erasure::states::conditional_env_states;
use erasure::validation::{theorem_suite, theorem_suite_with, Scale};
use erasure::PureState;

/// c2 with the square-root term of the sub-fidelity dropped.
fn c2_without_radicand(psi: &PureState) -> erasure::Result<f64> {
    let pair = conditional_env_states(psi);
    let Some((r0, r1)) = pair.states() else {
        return Ok(0.0);
    };
    Ok(2.0 * (pair.p0 * pair.p1 * hs_overlap(r0, r1)?).sqrt())
}

#[test]
fn intact_route_passes() {
    assert!(theorem_suite(11, Scale::Quick).passed());
}

#[test]
fn mutated_route_fails() {
    let outcome = theorem_suite_with(11, Scale::Quick, c2_without_radicand);
    assert!(!outcome.passed());
    // K = 1 has scalar environment states, where the radicand is zero anyway
    assert!(outcome.checks[0].passed());
    assert!(outcome.checks[1..].iter().all(|c| !c.passed()), "{outcome}");
}
