//! Mach-Zehnder quantum-eraser sweeps.
//!
//! The path qubit B carries a which-path marker m_b = |a_b>_A |e_b>_E. The A
//! half can be measured by Alice (steering), the E half cannot. With overlaps
//! <a_0|a_1> = g_A and <e_0|e_1> = g_E the state is
//! (|0>_B |m_0> + e^{i phi} |1>_B |m_1>) / sqrt 2, so c1 = g_A g_E and c2 = g_E.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{out_of_range, Result};
use crate::measures::{c1, c2_subfidelity};
use crate::states::{PureState, TripartiteDims};

const MAX_GRID_POINTS: usize = 1_000_000;

/// Inclusive grid start, start + step, ..., end over [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaGrid {
    start: f64,
    end: f64,
    step: f64,
}

impl GammaGrid {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && step.is_finite()) {
            return Err(out_of_range(
                "gamma grid",
                format!("{start}:{step}:{end}"),
                "finite values",
            ));
        }
        if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&end) || start > end {
            return Err(out_of_range(
                "gamma grid",
                format!("{start}..{end}"),
                "0 <= start <= end <= 1",
            ));
        }
        if step <= 0.0 {
            return Err(out_of_range("gamma step", step, "step > 0"));
        }
        let grid = Self { start, end, step };
        if grid.len() > MAX_GRID_POINTS {
            return Err(out_of_range("gamma grid", grid.len(), "at most 10^6 points"));
        }
        Ok(grid)
    }

    pub fn len(&self) -> usize {
        ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| (self.start + i as f64 * self.step).min(self.end))
            .collect()
    }
}

/// Where the which-path marker lives and what else the environment knows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EraserSetup {
    pub phi: f64,
    /// Overlap of the environment's own marker states, 1 when E learns nothing.
    pub env_overlap: f64,
    /// Put the gamma marker in E instead of A, where Alice cannot erase it.
    pub marker_in_env: bool,
}

impl Default for EraserSetup {
    fn default() -> Self {
        Self {
            phi: 0.0,
            env_overlap: 1.0,
            marker_in_env: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EraserRow {
    pub gamma: f64,
    pub c1: f64,
    pub c2: f64,
}

/// |0>, g|0> + sqrt(1 - g^2)|1>
fn marker_pair(overlap: f64) -> [[f64; 2]; 2] {
    [[1.0, 0.0], [overlap, (1.0 - overlap * overlap).max(0.0).sqrt()]]
}

/// The marked interferometer state with a steering qubit A, dims (2, 2, dE).
pub fn eraser_state(gamma: f64, setup: &EraserSetup) -> Result<PureState> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(out_of_range("gamma", gamma, "0 <= gamma <= 1"));
    }
    if !(0.0..=1.0).contains(&setup.env_overlap) {
        return Err(out_of_range("env overlap", setup.env_overlap, "0 <= overlap <= 1"));
    }
    let (alice_overlap, env_overlap) = if setup.marker_in_env {
        (1.0, gamma * setup.env_overlap)
    } else {
        (gamma, setup.env_overlap)
    };
    let env_dim = if env_overlap == 1.0 { 1 } else { 2 };
    let dims = TripartiteDims::new(2, env_dim)?;
    let a = marker_pair(alice_overlap);
    let e = marker_pair(env_overlap);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let weights = [Complex64::new(h, 0.0), Complex64::from_polar(h, setup.phi)];

    let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
    for (b, weight) in weights.iter().enumerate() {
        for ia in 0..2 {
            for ie in 0..env_dim {
                amps[dims.index(ia, b, ie)] = weight * a[b][ia] * e[b][ie];
            }
        }
    }
    PureState::from_amplitudes(dims, amps)
}

pub fn sweep(grid: &GammaGrid, setup: &EraserSetup) -> Result<Vec<EraserRow>> {
    grid.points()
        .into_iter()
        .map(|gamma| {
            let psi = eraser_state(gamma, setup)?;
            Ok(EraserRow {
                gamma,
                c1: c1(&psi)?,
                c2: c2_subfidelity(&psi)?,
            })
        })
        .collect()
}
