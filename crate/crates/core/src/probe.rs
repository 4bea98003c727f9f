//! Experiment: is C3 fixed by Bob's probabilities and the conditional
//! environment states alone?
//!
//! Two states share (p0, p1, rho0, rho1) exactly when their dA x dE blocks
//! V_b = <b_B|psi> have equal Gram matrices V_b^dagger V_b, i.e. when they differ by
//! a unitary on A that may depend on b. The probe applies random such unitaries
//! and records how far C3 moves, and how far it sits from 2 sqrt(p0 p1 F) with F
//! the Uhlmann fidelity of the conditional states.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{out_of_range, Result};
use crate::matkernel::ComplexMatrix;
use crate::measures::{c3_newton, uhlmann_fidelity};
use crate::random::{derive_seed, haar_unitary, rng_from_seed};
use crate::states::{conditional_env_states, cross_operator, PureState, TripartiteDims};

const MAX_ENV_DIM: u64 = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub trials: usize,
    pub seed: u64,
    /// max |C3(psi) - C3(psi')| over pairs with identical conditional data.
    pub max_same_data_diff: f64,
    /// max |C3 - 2 sqrt(p0 p1 F(rho0, rho1))|.
    pub max_fidelity_gap: f64,
    /// max over pairs of the distance between their conditional states, a sanity check.
    pub max_conditional_mismatch: f64,
}

/// sum_b (U_b (x) |b><b| (x) 1) |psi>
fn conditional_rotation(psi: &PureState, u: [&ComplexMatrix; 2]) -> Result<PureState> {
    let dims = psi.dims();
    let mut out = vec![Complex64::new(0.0, 0.0); dims.total()];
    for (b, ub) in u.iter().enumerate() {
        for a in 0..dims.alice() {
            for e in 0..dims.env() {
                out[dims.index(a, b, e)] = (0..dims.alice()).map(|a2| ub[(a, a2)] * psi.amplitude(a2, b, e)).sum();
            }
        }
    }
    PureState::from_amplitudes(dims, out)
}

fn c3(psi: &PureState) -> Result<f64> {
    Ok(2.0 * c3_newton(&cross_operator(&psi.reduced(&[0, 1])?)?.matrix)?)
}

pub fn probe_c3(trials: usize, seed: u64) -> Result<ProbeReport> {
    if trials == 0 {
        return Err(out_of_range("trials", trials, "trials >= 1"));
    }
    let mut report = ProbeReport {
        trials,
        seed,
        max_same_data_diff: 0.0,
        max_fidelity_gap: 0.0,
        max_conditional_mismatch: 0.0,
    };
    for i in 0..trials {
        let s = derive_seed(seed, i as u64);
        let env = 1 + (s % MAX_ENV_DIM) as usize;
        let psi = PureState::haar_sample(TripartiteDims::new(3, env)?, s);
        let mut rng = rng_from_seed(derive_seed(s, 1));
        let (u0, u1) = (haar_unitary(3, &mut rng), haar_unitary(3, &mut rng));
        let twin = conditional_rotation(&psi, [&u0, &u1])?;

        let (a, b) = (conditional_env_states(&psi), conditional_env_states(&twin));
        let mut mismatch = (a.p0 - b.p0).abs().max((a.p1 - b.p1).abs());
        if let (Some((a0, a1)), Some((b0, b1))) = (a.states(), b.states()) {
            mismatch = mismatch
                .max(a0.matrix().max_abs_diff(b0.matrix()))
                .max(a1.matrix().max_abs_diff(b1.matrix()));
        }
        let value = c3(&psi)?;
        let fidelity_form = match a.states() {
            Some((r0, r1)) => 2.0 * (a.p0 * a.p1 * uhlmann_fidelity(r0, r1)?).max(0.0).sqrt(),
            None => 0.0,
        };
        report.max_same_data_diff = report.max_same_data_diff.max((value - c3(&twin)?).abs());
        report.max_fidelity_gap = report.max_fidelity_gap.max((value - fidelity_form).abs());
        report.max_conditional_mismatch = report.max_conditional_mismatch.max(mismatch);
    }
    Ok(report)
}
