//! Haar-ensemble averages of C1, C2 and C3.
//!
//! Closed forms, for an environment of dimension K:
//!
//! ```text
//! <C1> = (-1)^K pi^{3/2}                       / (2   K! Gamma(1/2 - K))
//! <C2> = (-1)^K pi^{3/2} (13 - 22K)            / (32  K! Gamma(3/2 - K))
//! <C3> = (-1)^K pi^{3/2} (433 - 936K + 428K^2) / (512 K! Gamma(5/2 - K))
//! ```
//!
//! Gamma at half-integers is rewritten with Gamma(1/2 - n) = (-4)^n n! sqrt(pi) / (2n)!,
//! which turns every mean into pi times a product of positive ratios.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{out_of_range, Result};
use crate::measures::{c1, ca_trace_norm};
use crate::random::derive_seed;
use crate::states::{PureState, TripartiteDims};

pub const MAX_ENV_DIM: usize = 30;
pub const MIN_SAMPLES: usize = 100;

/// Monte-Carlo estimate next to the closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleReport {
    pub a: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
    pub mc_mean: f64,
    pub mc_stderr: f64,
    pub closed_form: f64,
    pub z_score: f64,
}

/// (2n)! / (4^n (n!)^2) = prod_{j=1..n} (2j - 1) / (2j)
fn central_ratio(n: usize) -> f64 {
    (1..=n).map(|j| (2 * j - 1) as f64 / (2 * j) as f64).product()
}

fn check_args(a: usize, k: usize) -> Result<()> {
    if !(1..=3).contains(&a) {
        return Err(out_of_range("a", a, "a in {1, 2, 3}"));
    }
    if !(1..=MAX_ENV_DIM).contains(&k) {
        return Err(out_of_range("K", k, "1 <= K <= 30"));
    }
    Ok(())
}

/// Exact Haar average of C_a for environment dimension K.
pub fn closed_form_mean(a: usize, k: usize) -> Result<f64> {
    check_args(a, k)?;
    let pi = std::f64::consts::PI;
    let kf = k as f64;
    let value = match a {
        // (pi / 2) (2K)! / (4^K K!^2)
        1 => 0.5 * pi * central_ratio(k),
        // pi (22K - 13) (2K - 2)! / (32 4^{K-1} K! (K-1)!)
        2 => pi * (22.0 * kf - 13.0) * central_ratio(k - 1) / (32.0 * kf),
        // Gamma(3/2) = sqrt(pi) / 2 at K = 1, where the polynomial is -75
        3 if k == 1 => 75.0 * pi / 256.0,
        // pi (428K^2 - 936K + 433) (2K - 4)! / (512 4^{K-2} K! (K-2)!)
        3 => pi * (428.0 * kf * kf - 936.0 * kf + 433.0) * central_ratio(k - 2) / (512.0 * kf * (kf - 1.0)),
        _ => unreachable!("checked above"),
    };
    Ok(value)
}

/// Sample mean and standard error of C_a over Haar states of dims (a, 2, K).
///
/// Sample i uses seed `derive_seed(seed, i)`; values are summed in index order,
/// so the result is bitwise independent of the thread count.
pub fn monte_carlo_mean(a: usize, k: usize, samples: usize, seed: u64) -> Result<(f64, f64)> {
    check_args(a, k)?;
    if samples < MIN_SAMPLES {
        return Err(out_of_range("samples", samples, "samples >= 100"));
    }
    let dims = TripartiteDims::new(a, k)?;
    let sample = |i: usize| ca_trace_norm(&PureState::haar_sample(dims, derive_seed(seed, i as u64)));

    #[cfg(feature = "parallel")]
    let values: Vec<f64> = (0..samples).into_par_iter().map(sample).collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let values: Vec<f64> = (0..samples).map(sample).collect::<Result<_>>()?;

    Ok(mean_and_stderr(&values))
}

fn traced_c1_mean(k: usize, samples: usize, seed: u64) -> Result<(f64, f64)> {
    if samples < MIN_SAMPLES {
        return Err(out_of_range("samples", samples, "samples >= 100"));
    }
    let dims = TripartiteDims::new(2, k)?;
    let sample = |i: usize| c1(&PureState::haar_sample(dims, derive_seed(seed, i as u64)));

    #[cfg(feature = "parallel")]
    let values: Vec<f64> = (0..samples).into_par_iter().map(sample).collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let values: Vec<f64> = (0..samples).map(sample).collect::<Result<_>>()?;

    Ok(mean_and_stderr(&values))
}

pub(crate) fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// How the dimension of A enters the ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reading {
    /// Haar states of dims (a, 2, K), compared with the closed form at K.
    #[default]
    Adopted,
    /// a = 1 only: Haar states of dims (2, 2, K) with the qubit A left in the
    /// environment, compared with the closed form at 2K.
    Traced,
}

pub fn compare(a: usize, k: usize, samples: usize, seed: u64) -> Result<EnsembleReport> {
    compare_with_reading(a, k, samples, seed, Reading::Adopted)
}

pub fn compare_with_reading(a: usize, k: usize, samples: usize, seed: u64, reading: Reading) -> Result<EnsembleReport> {
    let (closed_form, (mc_mean, mc_stderr)) = match reading {
        Reading::Adopted => (closed_form_mean(a, k)?, monte_carlo_mean(a, k, samples, seed)?),
        Reading::Traced => {
            if a != 1 {
                return Err(out_of_range("a", a, "a = 1 for the traced reading"));
            }
            check_args(1, k)?;
            (closed_form_mean(1, 2 * k)?, traced_c1_mean(k, samples, seed)?)
        }
    };
    Ok(EnsembleReport {
        a,
        k,
        samples,
        seed,
        mc_mean,
        mc_stderr,
        closed_form,
        z_score: (mc_mean - closed_form) / mc_stderr,
    })
}
