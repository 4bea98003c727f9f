//! Brute-force search over Alice's rank-1 projective measurements.
//!
//! Each outcome k of a basis {u_k} on A leaves Bob's qubit in
//! Tr_A[(|u_k><u_k| (x) 1) rho_AB] (unnormalized); the average coherence is the
//! sum of twice the off-diagonal moduli. The search certifies from below how
//! close a measurement gets to 2 Tr|chi_A|.

use num_complex::Complex64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{out_of_range, Error, Result};
use crate::matkernel::ComplexMatrix;
use crate::measures::ca_trace_norm;
use crate::random::{complex_gaussian_matrix, derive_seed, haar_unitary, orthonormalize_columns, rng_from_seed};
use crate::states::{DensityOperator, PureState};

const ORTHONORMAL_TOL: f64 = 1e-9;
const MIN_OUTCOME_PROBABILITY: f64 = 1e-12;
const REFINE_START_STEP: f64 = 0.3;
const REFINE_MIN_STEP: f64 = 1e-4;
const REFINE_TRIALS_PER_STEP: usize = 24;
// seed-stream index reserved for the refinement pass
const REFINE_STREAM: u64 = u64::MAX;

/// Orthonormal basis of A, one vector per outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    vectors: Vec<Vec<Complex64>>,
}

impl MeasurementBasis {
    pub fn new(vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = vectors.len();
        if dim == 0 || vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::ShapeMismatch(format!(
                "a basis needs d vectors of length d, got {} vectors",
                dim
            )));
        }
        let mut worst = 0.0_f64;
        for (i, u) in vectors.iter().enumerate() {
            for (j, v) in vectors.iter().enumerate() {
                let dot: Complex64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        if worst > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal(worst));
        }
        Ok(Self { vectors })
    }

    /// Columns of a unitary matrix.
    pub fn from_unitary(u: &ComplexMatrix) -> Result<Self> {
        Self::new((0..u.cols()).map(|j| u.column(j)).collect())
    }

    /// The computational basis |0>, ..., |d-1>.
    pub fn computational(dim: usize) -> Self {
        Self::from_unitary(&ComplexMatrix::identity(dim)).expect("identity is unitary")
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut m = ComplexMatrix::zeros(d, d);
        for (j, v) in self.vectors.iter().enumerate() {
            for (i, &z) in v.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        m
    }
}

/// Outcome of [`optimize_steering`].
#[derive(Debug, Clone)]
pub struct SteeringResult {
    /// Best average coherence over every basis evaluated, refinement included.
    pub best_value: f64,
    pub best_basis: MeasurementBasis,
    pub evaluations: usize,
    /// 2 Tr|chi_A|.
    pub analytic_bound: f64,
    /// Best value of the random-basis stage alone.
    pub search_best: f64,
}

/// rho_AB prepared once for repeated basis evaluations.
#[derive(Debug, Clone)]
pub struct SteeringProblem {
    rho_ab: DensityOperator,
    alice: usize,
}

impl SteeringProblem {
    pub fn new(psi: &PureState) -> Result<Self> {
        Ok(Self {
            rho_ab: psi.reduced(&[0, 1])?,
            alice: psi.dims().alice(),
        })
    }

    pub fn alice_dim(&self) -> usize {
        self.alice
    }

    pub fn average_coherence(&self, basis: &MeasurementBasis) -> Result<f64> {
        if basis.dim() != self.alice {
            return Err(Error::ShapeMismatch(format!(
                "basis of dimension {} for dim(A) = {}",
                basis.dim(),
                self.alice
            )));
        }
        Ok(self.average_coherence_unchecked(basis.vectors().iter().map(Vec::as_slice)))
    }

    fn average_coherence_unchecked<'a>(&self, vectors: impl Iterator<Item = &'a [Complex64]>) -> f64 {
        let rho = self.rho_ab.matrix();
        let mut total = 0.0;
        for u in vectors {
            // sigma[b][b'] = sum_ij u_i u_j^* rho[(j, b), (i, b')]
            let mut sigma = [[Complex64::new(0.0, 0.0); 2]; 2];
            for (i, ui) in u.iter().enumerate() {
                for (j, uj) in u.iter().enumerate() {
                    let w = ui * uj.conj();
                    for (b, row) in sigma.iter_mut().enumerate() {
                        for (bp, entry) in row.iter_mut().enumerate() {
                            *entry += w * rho[(2 * j + b, 2 * i + bp)];
                        }
                    }
                }
            }
            let probability = sigma[0][0].re + sigma[1][1].re;
            if probability >= MIN_OUTCOME_PROBABILITY {
                total += 2.0 * sigma[0][1].norm();
            }
        }
        total
    }

    fn evaluate_matrix(&self, u: &ComplexMatrix) -> f64 {
        let columns: Vec<Vec<Complex64>> = (0..u.cols()).map(|j| u.column(j)).collect();
        self.average_coherence_unchecked(columns.iter().map(Vec::as_slice))
    }
}

/// Average coherence of Bob's qubit over the outcomes of `basis` measured on A.
pub fn average_coherence(psi: &PureState, basis: &MeasurementBasis) -> Result<f64> {
    SteeringProblem::new(psi)?.average_coherence(basis)
}

fn candidate_basis(alice: usize, seed: u64, index: usize) -> ComplexMatrix {
    haar_unitary(alice, &mut rng_from_seed(derive_seed(seed, index as u64)))
}

/// Random-basis search plus stochastic local refinement of the incumbent.
///
/// Candidate i is drawn from `derive_seed(seed, i)`, so the result is the same
/// whether or not candidates are evaluated in parallel; ties go to the lowest index.
pub fn optimize_steering(psi: &PureState, budget: usize, seed: u64) -> Result<SteeringResult> {
    if budget == 0 {
        return Err(out_of_range("budget", budget, "budget >= 1"));
    }
    let problem = SteeringProblem::new(psi)?;
    let alice = problem.alice_dim();
    let evaluate = |i: usize| problem.evaluate_matrix(&candidate_basis(alice, seed, i));

    #[cfg(feature = "parallel")]
    let values: Vec<f64> = (0..budget).into_par_iter().map(evaluate).collect();
    #[cfg(not(feature = "parallel"))]
    let values: Vec<f64> = (0..budget).map(evaluate).collect();

    let (best_index, search_best) =
        values.iter().copied().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |best, (i, v)| if v > best.1 { (i, v) } else { best },
        );

    let mut incumbent = candidate_basis(alice, seed, best_index);
    let mut best_value = search_best;
    let mut evaluations = budget;
    let mut rng = rng_from_seed(derive_seed(seed, REFINE_STREAM));
    let mut step = REFINE_START_STEP;
    while step >= REFINE_MIN_STEP {
        for _ in 0..REFINE_TRIALS_PER_STEP {
            let noise = complex_gaussian_matrix(alice, alice, &mut rng).scale_real(step);
            let mut trial = &incumbent + &noise;
            if !orthonormalize_columns(&mut trial) {
                continue;
            }
            evaluations += 1;
            let value = problem.evaluate_matrix(&trial);
            if value > best_value {
                best_value = value;
                incumbent = trial;
            }
        }
        step *= 0.5;
    }

    Ok(SteeringResult {
        best_value,
        best_basis: MeasurementBasis::from_unitary(&incumbent)?,
        evaluations,
        analytic_bound: ca_trace_norm(psi)?,
        search_best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::TripartiteDims;
    use approx::assert_abs_diff_eq;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell() -> PureState {
        PureState::from_amplitudes(TripartiteDims::new(2, 1).unwrap(), vec![c(H), c(0.0), c(0.0), c(H)]).unwrap()
    }

    fn ghz() -> PureState {
        let mut amps = vec![c(0.0); 8];
        amps[0] = c(H);
        amps[7] = c(H);
        PureState::from_amplitudes(TripartiteDims::new(2, 2).unwrap(), amps).unwrap()
    }

    fn diagonal_basis() -> MeasurementBasis {
        MeasurementBasis::new(vec![vec![c(H), c(H)], vec![c(H), c(-H)]]).unwrap()
    }

    #[test]
    fn basis_validation() {
        assert!(matches!(
            MeasurementBasis::new(vec![vec![c(1.0), c(0.0)], vec![c(H), c(H)]]),
            Err(Error::NotOrthonormal(_))
        ));
        assert!(matches!(
            MeasurementBasis::new(vec![vec![c(1.0), c(0.0)]]),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            average_coherence(&bell(), &MeasurementBasis::computational(3)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn erasure_in_the_diagonal_basis() {
        assert_abs_diff_eq!(
            average_coherence(&bell(), &diagonal_basis()).unwrap(),
            1.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn which_path_measurement_kills_coherence() {
        assert_eq!(
            average_coherence(&bell(), &MeasurementBasis::computational(2)).unwrap(),
            0.0
        );
    }

    #[test]
    fn coherent_bob_is_unaffected() {
        // |0_A> |+_B> |e>
        let dims = TripartiteDims::new(2, 2).unwrap();
        let e = [c(0.6), Complex64::new(0.0, 0.8)];
        let mut amps = vec![c(0.0); 8];
        for b in 0..2 {
            for (ie, &ze) in e.iter().enumerate() {
                amps[dims.index(0, b, ie)] = ze * H;
            }
        }
        let psi = PureState::from_amplitudes(dims, amps).unwrap();
        let mut rng = rng_from_seed(1);
        for _ in 0..10 {
            let basis = MeasurementBasis::from_unitary(&haar_unitary(2, &mut rng)).unwrap();
            assert_abs_diff_eq!(average_coherence(&psi, &basis).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn invariant_under_permutation_and_phases() {
        let psi = PureState::haar_sample(TripartiteDims::new(3, 2).unwrap(), 5);
        let mut rng = rng_from_seed(6);
        let u = haar_unitary(3, &mut rng);
        let basis = MeasurementBasis::from_unitary(&u).unwrap();
        let value = average_coherence(&psi, &basis).unwrap();

        let mut shuffled: Vec<Vec<Complex64>> = basis.vectors().to_vec();
        shuffled.rotate_left(1);
        for (k, v) in shuffled.iter_mut().enumerate() {
            let phase = Complex64::from_polar(1.0, 0.7 * k as f64 + 0.3);
            v.iter_mut().for_each(|z| *z *= phase);
        }
        let moved = MeasurementBasis::new(shuffled).unwrap();
        assert_abs_diff_eq!(average_coherence(&psi, &moved).unwrap(), value, epsilon = 1e-14);
    }

    #[test]
    fn never_exceeds_trace_norm_bound() {
        let mut rng = rng_from_seed(7);
        for (a, e, seed) in [(2, 2, 1), (3, 2, 2), (2, 5, 3), (1, 3, 4)] {
            let psi = PureState::haar_sample(TripartiteDims::new(a, e).unwrap(), seed);
            let bound = ca_trace_norm(&psi).unwrap();
            let problem = SteeringProblem::new(&psi).unwrap();
            for _ in 0..200 {
                let basis = MeasurementBasis::from_unitary(&haar_unitary(a, &mut rng)).unwrap();
                assert!(problem.average_coherence(&basis).unwrap() <= bound + 1e-9);
            }
        }
    }

    #[test]
    fn optimizer_finds_bell_optimum() {
        let result = optimize_steering(&bell(), 10_000, 3).unwrap();
        assert!(result.best_value >= 1.0 - 1e-3, "{}", result.best_value);
        assert!(result.best_value <= result.analytic_bound + 1e-9);
        assert_abs_diff_eq!(result.analytic_bound, 1.0, epsilon = 1e-14);
        assert!(result.evaluations > 10_000);
    }

    #[test]
    fn optimizer_on_ghz_stays_at_zero() {
        let result = optimize_steering(&ghz(), 1_000, 4).unwrap();
        assert!(result.best_value <= 1e-9);
        assert_eq!(result.analytic_bound, 0.0);
    }

    #[test]
    fn optimizer_is_deterministic() {
        let psi = PureState::haar_sample(TripartiteDims::new(3, 2).unwrap(), 8);
        let a = optimize_steering(&psi, 500, 11).unwrap();
        let b = optimize_steering(&psi, 500, 11).unwrap();
        assert_eq!(a.best_value, b.best_value);
        assert_eq!(a.best_basis, b.best_basis);
        assert_eq!(a.evaluations, b.evaluations);
    }

    #[test]
    fn search_stage_is_monotone_in_budget() {
        let psi = PureState::haar_sample(TripartiteDims::new(2, 3).unwrap(), 9);
        let mut last = f64::NEG_INFINITY;
        for budget in [1, 10, 100, 1000] {
            let r = optimize_steering(&psi, budget, 12).unwrap();
            assert!(r.search_best >= last);
            assert!(r.best_value >= r.search_best);
            last = r.search_best;
        }
    }

    #[test]
    fn optimizer_approaches_bound_on_haar_state() {
        let psi = PureState::haar_sample(TripartiteDims::new(2, 2).unwrap(), 21);
        let r = optimize_steering(&psi, 20_000, 5).unwrap();
        assert!(r.analytic_bound - r.best_value <= 5e-3);
        assert!(r.best_value <= r.analytic_bound + 1e-9);
    }

    #[test]
    fn zero_budget_rejected() {
        assert!(matches!(
            optimize_steering(&bell(), 0, 1),
            Err(Error::OutOfRange { .. })
        ));
    }
}
