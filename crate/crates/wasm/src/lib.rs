//! Browser bindings for the demo page in `www/`.
//!
//! Every export returns a flat `Float64Array`; the page slices it. The plain
//! `*_values` functions hold the logic and are what the native tests call.

use erasure::ensemble::{closed_form_mean, compare, MAX_ENV_DIM};
use erasure::eraser::{sweep, EraserSetup, GammaGrid};
use erasure::measures::{c1, c2_subfidelity, ca_trace_norm};
use erasure::steering::optimize_steering;
use erasure::{PureState, TripartiteDims};
use wasm_bindgen::prelude::*;

fn to_js<T>(r: Result<T, String>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// [gamma, c1, c2] per grid point, `points` points from 0 to 1.
pub fn eraser_values(points: usize, phi: f64, env_overlap: f64, marker_in_env: bool) -> Result<Vec<f64>, String> {
    if points < 2 {
        return Err("need at least two grid points".into());
    }
    let grid = GammaGrid::new(0.0, 1.0, 1.0 / (points - 1) as f64).map_err(|e| e.to_string())?;
    let setup = EraserSetup {
        phi,
        env_overlap,
        marker_in_env,
    };
    let rows = sweep(&grid, &setup).map_err(|e| e.to_string())?;
    Ok(rows.iter().flat_map(|r| [r.gamma, r.c1, r.c2]).collect())
}

/// Closed-form averages: for K = 1..=max_k, [K, <C1>, <C2>, <C3>].
pub fn ensemble_curve_values(max_k: usize) -> Result<Vec<f64>, String> {
    if !(1..=MAX_ENV_DIM).contains(&max_k) {
        return Err(format!("K must be between 1 and {MAX_ENV_DIM}"));
    }
    let mut out = Vec::with_capacity(4 * max_k);
    for k in 1..=max_k {
        out.push(k as f64);
        for a in 1..=3 {
            out.push(closed_form_mean(a, k).map_err(|e| e.to_string())?);
        }
    }
    Ok(out)
}

/// [mc_mean, mc_stderr, closed_form, z_score].
pub fn ensemble_sample_values(a: usize, k: usize, samples: usize, seed: u64) -> Result<Vec<f64>, String> {
    let r = compare(a, k, samples, seed).map_err(|e| e.to_string())?;
    Ok(vec![r.mc_mean, r.mc_stderr, r.closed_form, r.z_score])
}

/// One Haar state of dims (alice, 2, env):
/// [c1, 2Tr|chi|, c2 from the environment (NaN unless alice = 2), best steered value].
pub fn random_state_values(alice: usize, env: usize, seed: u64, budget: usize) -> Result<Vec<f64>, String> {
    let dims = TripartiteDims::new(alice, env).map_err(|e| e.to_string())?;
    if dims.total() > 256 {
        return Err("keep dA * 2 * dE at most 256 in the browser".into());
    }
    let psi = PureState::haar_sample(dims, seed);
    let c2 = if alice == 2 {
        c2_subfidelity(&psi).map_err(|e| e.to_string())?
    } else {
        f64::NAN
    };
    let steered = optimize_steering(&psi, budget, seed).map_err(|e| e.to_string())?;
    Ok(vec![
        c1(&psi).map_err(|e| e.to_string())?,
        ca_trace_norm(&psi).map_err(|e| e.to_string())?,
        c2,
        steered.best_value,
    ])
}

#[wasm_bindgen]
pub fn eraser_curve(points: usize, phi: f64, env_overlap: f64, marker_in_env: bool) -> Result<Vec<f64>, JsError> {
    to_js(eraser_values(points, phi, env_overlap, marker_in_env))
}

#[wasm_bindgen]
pub fn ensemble_curves(max_k: usize) -> Result<Vec<f64>, JsError> {
    to_js(ensemble_curve_values(max_k))
}

#[wasm_bindgen]
pub fn ensemble_sample(a: usize, k: usize, samples: usize, seed: u64) -> Result<Vec<f64>, JsError> {
    to_js(ensemble_sample_values(a, k, samples, seed))
}

#[wasm_bindgen]
pub fn random_state(alice: usize, env: usize, seed: u64, budget: usize) -> Result<Vec<f64>, JsError> {
    to_js(random_state_values(alice, env, seed, budget))
}
