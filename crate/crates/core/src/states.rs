//! Tripartite pure states on A (Alice's steering system) x B (Bob's qubit)
//! x E (environment), and the reduced objects the measures consume.
//!
//! Amplitudes are stored A-major, E-minor: `idx = (a * 2 + b) * dim_e + e`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};
use crate::matkernel::{hermitian_eigenvalues, ComplexMatrix, HERMITIAN_TOL};
use crate::random::{complex_gaussian_vec, rng_from_seed};

/// Upper bound on dA * dB * dE.
pub const MAX_TOTAL_DIM: usize = 4096;
/// Below this probability an alternative of B is treated as absent.
pub const DEGENERATE_PROBABILITY: f64 = 1e-12;
const NORM_TOL: f64 = 1e-6;
const TRACE_TOL: f64 = 1e-9;
const PSD_TOL: f64 = 1e-10;
// Jacobi validation of the spectrum is only run up to this dimension.
const MAX_SPECTRAL_CHECK_DIM: usize = 64;

/// Subsystem dimensions (dA, 2, dE). Bob's system is always a qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TripartiteDims {
    alice: usize,
    env: usize,
}

impl TripartiteDims {
    pub const BOB: usize = 2;

    pub fn new(alice: usize, env: usize) -> Result<Self> {
        if alice == 0 {
            return Err(out_of_range("dim(A)", alice, "dim(A) >= 1"));
        }
        if env == 0 {
            return Err(out_of_range("dim(E)", env, "dim(E) >= 1"));
        }
        let total = alice.saturating_mul(2 * env);
        if total > MAX_TOTAL_DIM {
            return Err(out_of_range("dim(A)*2*dim(E)", total, "total dimension <= 4096"));
        }
        Ok(Self { alice, env })
    }

    /// Accepts a `[dA, dB, dE]` triple; dB must be 2.
    pub fn from_triple(dims: [usize; 3]) -> Result<Self> {
        if dims[1] != Self::BOB {
            return Err(Error::BadShape(format!("dim(B) must be 2, got {}", dims[1])));
        }
        Self::new(dims[0], dims[2])
    }

    pub fn alice(&self) -> usize {
        self.alice
    }

    pub fn env(&self) -> usize {
        self.env
    }

    pub fn as_triple(&self) -> [usize; 3] {
        [self.alice, Self::BOB, self.env]
    }

    pub fn total(&self) -> usize {
        self.alice * Self::BOB * self.env
    }

    pub fn index(&self, a: usize, b: usize, e: usize) -> usize {
        (a * Self::BOB + b) * self.env + e
    }
}

/// Normalized pure state of A x B x E.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: TripartiteDims,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates length and norm (within 1e-6 of 1), then renormalizes exactly.
    pub fn from_amplitudes(dims: TripartiteDims, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::BadLength {
                expected: dims.total(),
                actual: amplitudes.len(),
            });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotNormalizable(f64::NAN));
        }
        let norm = l2_norm(&amplitudes);
        if norm < 1e-12 {
            return Err(Error::NotNormalizable(norm));
        }
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalizable(norm));
        }
        Ok(Self::normalized(dims, amplitudes))
    }

    /// Divides by the computed norm; the caller guarantees it is nonzero.
    fn normalized(dims: TripartiteDims, mut amplitudes: Vec<Complex64>) -> Self {
        let norm = l2_norm(&amplitudes);
        for z in &mut amplitudes {
            *z /= norm;
        }
        Self { dims, amplitudes }
    }

    /// Haar-random pure state: normalized i.i.d. complex Gaussians drawn from `seed`.
    pub fn haar_sample(dims: TripartiteDims, seed: u64) -> Self {
        let mut rng = rng_from_seed(seed);
        loop {
            let amps = complex_gaussian_vec(dims.total(), &mut rng);
            if l2_norm(&amps) > 1e-12 {
                return Self::normalized(dims, amps);
            }
        }
    }

    /// Marked Mach-Zehnder path qubit: dims (1, 2, 2),
    /// (|0>_B |m0> + e^{i phi} |1>_B |m1>) / sqrt 2 with <m0|m1> = gamma.
    pub fn mzi(gamma: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(out_of_range("gamma", gamma, "0 <= gamma <= 1"));
        }
        let dims = TripartiteDims::new(1, 2)?;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let phase = Complex64::from_polar(h, phi);
        let amps = vec![
            Complex64::new(h, 0.0),
            Complex64::new(0.0, 0.0),
            phase * gamma,
            phase * (1.0 - gamma * gamma).sqrt(),
        ];
        Ok(Self::normalized(dims, amps))
    }

    pub fn dims(&self) -> TripartiteDims {
        self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, a: usize, b: usize, e: usize) -> Complex64 {
        self.amplitudes[self.dims.index(a, b, e)]
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    /// |psi><psi| on the full space.
    pub fn density(&self) -> DensityOperator {
        DensityOperator {
            matrix: ComplexMatrix::outer(&self.amplitudes, &self.amplitudes),
            subsystem_dims: self.dims.as_triple().to_vec(),
        }
    }

    /// Reduced state on the kept subsystems (0 = A, 1 = B, 2 = E), built
    /// from the amplitudes without forming the full density operator.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityOperator> {
        let dims = self.dims.as_triple();
        let split = SubsystemSplit::new(&dims, keep)?;
        let (kept, traced) = (split.kept_dim, split.traced_dim);
        let mut block = vec![Complex64::new(0.0, 0.0); kept * traced];
        for (idx, &amp) in self.amplitudes.iter().enumerate() {
            let (k, t) = split.split(idx);
            block[k * traced + t] = amp;
        }
        let mut rho = ComplexMatrix::zeros(kept, kept);
        for i in 0..kept {
            for j in i..kept {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..traced {
                    acc += block[i * traced + t] * block[j * traced + t].conj();
                }
                rho[(i, j)] = acc;
                rho[(j, i)] = acc.conj();
            }
        }
        Ok(DensityOperator {
            matrix: rho,
            subsystem_dims: split.kept_dims,
        })
    }

    /// Amplitude block <b_B|psi> laid out as a dA x dE matrix.
    pub(crate) fn bob_block(&self, b: usize) -> ComplexMatrix {
        let (da, de) = (self.dims.alice, self.dims.env);
        let mut m = ComplexMatrix::zeros(da, de);
        for a in 0..da {
            for e in 0..de {
                m[(a, e)] = self.amplitude(a, b, e);
            }
        }
        m
    }
}

fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Maps full indices to (kept, traced) index pairs for a tensor factorization.
struct SubsystemSplit {
    dims: Vec<usize>,
    keep_mask: Vec<bool>,
    kept_dims: Vec<usize>,
    kept_dim: usize,
    traced_dim: usize,
}

impl SubsystemSplit {
    fn new(dims: &[usize], keep: &[usize]) -> Result<Self> {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if keep.is_empty() || sorted.len() != keep.len() || sorted.iter().any(|&k| k >= dims.len()) {
            return Err(Error::BadSubsystemIndex(keep.to_vec()));
        }
        let keep_mask: Vec<bool> = (0..dims.len()).map(|i| sorted.contains(&i)).collect();
        let kept_dims: Vec<usize> = sorted.iter().map(|&k| dims[k]).collect();
        let kept_dim = kept_dims.iter().product();
        let traced_dim = dims.iter().product::<usize>() / kept_dim;
        Ok(Self {
            dims: dims.to_vec(),
            keep_mask,
            kept_dims,
            kept_dim,
            traced_dim,
        })
    }

    fn split(&self, mut idx: usize) -> (usize, usize) {
        let (mut kept, mut traced) = (0, 0);
        let (mut kept_stride, mut traced_stride) = (1, 1);
        for (d, &keep) in self.dims.iter().zip(&self.keep_mask).rev() {
            let digit = idx % d;
            idx /= d;
            if keep {
                kept += digit * kept_stride;
                kept_stride *= d;
            } else {
                traced += digit * traced_stride;
                traced_stride *= d;
            }
        }
        (kept, traced)
    }
}

/// Hermitian, unit-trace, PSD operator with its tensor factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    subsystem_dims: Vec<usize>,
}

impl DensityOperator {
    /// Validates Hermiticity (1e-10), unit trace (1e-9) and the spectrum
    /// (eigenvalues >= -1e-10, checked up to dimension 64).
    pub fn new(matrix: ComplexMatrix, subsystem_dims: Vec<usize>) -> Result<Self> {
        let n = matrix.ensure_square()?;
        if subsystem_dims.is_empty() || subsystem_dims.iter().product::<usize>() != n {
            return Err(Error::BadShape(format!(
                "subsystem dims {subsystem_dims:?} do not factor dimension {n}"
            )));
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace {trace}")));
        }
        if n <= MAX_SPECTRAL_CHECK_DIM {
            let lowest = hermitian_eigenvalues(&matrix)?[0];
            if lowest < -PSD_TOL {
                return Err(Error::NotPsd { eigenvalue: lowest });
            }
        }
        Ok(Self { matrix, subsystem_dims })
    }

    /// Single-factor operator, e.g. a qubit or environment state.
    pub fn single(matrix: ComplexMatrix) -> Result<Self> {
        let n = matrix.rows();
        Self::new(matrix, vec![n])
    }

    pub(crate) fn from_parts_unchecked(matrix: ComplexMatrix, subsystem_dims: Vec<usize>) -> Self {
        Self { matrix, subsystem_dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.subsystem_dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn purity(&self) -> f64 {
        self.matrix
            .trace_of_product(&self.matrix)
            .expect("density operators are square")
            .re
    }

    /// Traces out every factor not listed in `keep`; kept factors stay in their original order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityOperator> {
        let split = SubsystemSplit::new(&self.subsystem_dims, keep)?;
        let n = self.dim();
        let (kept, traced) = (split.kept_dim, split.traced_dim);
        let index_of: Vec<(usize, usize)> = (0..n).map(|i| split.split(i)).collect();
        // inverse map: (kept, traced) -> full index
        let mut full = vec![0usize; n];
        for (i, &(k, t)) in index_of.iter().enumerate() {
            full[k * traced + t] = i;
        }
        let mut out = ComplexMatrix::zeros(kept, kept);
        for i in 0..kept {
            for j in 0..kept {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..traced {
                    acc += self.matrix[(full[i * traced + t], full[j * traced + t])];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(DensityOperator {
            matrix: out,
            subsystem_dims: split.kept_dims,
        })
    }
}

/// Probabilities of Bob's alternatives and the normalized environment states
/// conditioned on them (A traced out). An alternative with probability below
/// 1e-12 has no conditional state.
#[derive(Debug, Clone)]
pub struct ConditionalEnvPair {
    pub p0: f64,
    pub p1: f64,
    pub rho0: Option<DensityOperator>,
    pub rho1: Option<DensityOperator>,
}

impl ConditionalEnvPair {
    pub fn is_degenerate(&self) -> bool {
        self.rho0.is_none() || self.rho1.is_none()
    }

    /// Both conditional states, or `None` when one alternative is absent.
    pub fn states(&self) -> Option<(&DensityOperator, &DensityOperator)> {
        Some((self.rho0.as_ref()?, self.rho1.as_ref()?))
    }

    /// p0 rho0 + p1 rho1
    pub fn mixture(&self) -> ComplexMatrix {
        let parts = [(self.p0, &self.rho0), (self.p1, &self.rho1)];
        let dim = parts
            .iter()
            .find_map(|(_, r)| r.as_ref().map(DensityOperator::dim))
            .unwrap_or(1);
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (p, rho) in parts {
            if let Some(rho) = rho {
                acc = &acc + &rho.matrix().scale_real(p);
            }
        }
        acc
    }
}

/// Conditional environment states given Bob's alternatives, with A traced out.
pub fn conditional_env_states(psi: &PureState) -> ConditionalEnvPair {
    let de = psi.dims().env();
    let mut p = [0.0; 2];
    let mut rho: [Option<DensityOperator>; 2] = [None, None];
    for b in 0..2 {
        let block = psi.bob_block(b);
        // unnormalized: sum_a |v_ab><v_ab| with v_ab the E-vector at (a, b)
        let mut unnorm = ComplexMatrix::zeros(de, de);
        for a in 0..block.rows() {
            for e in 0..de {
                for f in 0..de {
                    unnorm[(e, f)] += block[(a, e)] * block[(a, f)].conj();
                }
            }
        }
        p[b] = unnorm.trace().re;
        if p[b] >= DEGENERATE_PROBABILITY {
            rho[b] = Some(DensityOperator::from_parts_unchecked(
                unnorm.scale_real(1.0 / p[b]),
                vec![de],
            ));
        }
    }
    let [rho0, rho1] = rho;
    ConditionalEnvPair {
        p0: p[0],
        p1: p[1],
        rho0,
        rho1,
    }
}

/// chi_A = <0_B| rho_AB |1_B>, a dA x dA block.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossOperator {
    pub matrix: ComplexMatrix,
}

pub fn cross_operator(rho_ab: &DensityOperator) -> Result<CrossOperator> {
    let dims = rho_ab.subsystem_dims();
    if dims.len() != 2 || dims[1] != 2 {
        return Err(Error::BadShape(format!(
            "cross operator needs dims (dA, 2), got {dims:?}"
        )));
    }
    let da = dims[0];
    let mut chi = ComplexMatrix::zeros(da, da);
    for i in 0..da {
        for j in 0..da {
            chi[(i, j)] = rho_ab.matrix()[(2 * i, 2 * j + 1)];
        }
    }
    Ok(CrossOperator { matrix: chi })
}

/// JSON state file: `{"dims": [dA, 2, dE], "amplitudes": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: [usize; 3],
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(psi: &PureState) -> Self {
        Self {
            dims: psi.dims().as_triple(),
            amplitudes: psi.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn into_state(self) -> Result<PureState> {
        let dims = TripartiteDims::from_triple(self.dims)?;
        let amps = self
            .amplitudes
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        PureState::from_amplitudes(dims, amps)
    }
}
