//! Coherence of Bob's qubit with and without steering.
//!
//! * `c1`: coherence of rho_B with no help from A.
//! * `ca_trace_norm`: best average coherence Alice can steer to, 2 Tr|chi_A|.
//! * `c2_subfidelity`: the same quantity for a qubit A, computed only from the
//!   conditional environment states through their sub-fidelity.
//! * `c3_newton`: Tr|chi| for a 3x3 chi from trace polynomials of chi^dagger chi
//!   and a quartic, without any singular value decomposition.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matkernel::{hermitian_eigenvalues, power_sums, psd_sqrt, real_quartic_roots, trace_norm, ComplexMatrix};
use crate::states::{conditional_env_states, cross_operator, DensityOperator, PureState};

const NOT_REAL_TOL: f64 = 1e-8;
const RADICAND_CLAMP: f64 = 1e-10;
const FIDELITY_PSD_CLAMP: f64 = 1e-10;
/// s2 / s1^2 and s3 / s1^3 below this are rounding noise from the Newton recurrence.
const RELATIVE_ZERO: f64 = 1e-13;
const MAX_FIXED_POINT_STEPS: usize = 64;
/// 1 - Tr(x^2)/Tr(x)^2 below this counts as rank 1. Near pure inputs both
/// fidelities carry a square root of rounding noise (~1e-8), so rank 1 is snapped.
const PURE_TOL: f64 = 1e-12;
/// Eigenvalues of sqrt(x) y sqrt(x) below this fraction of the largest are noise.
const FIDELITY_EIGEN_FLOOR: f64 = 1e-14;

/// Every measure of one state, as reported by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub dims: [usize; 3],
    pub p0: f64,
    pub p1: f64,
    pub c1: f64,
    /// Present only for dim(A) = 2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2_subfid: Option<f64>,
    pub ca_tracenorm: f64,
    /// Present only for dim(A) = 3.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c3_newton: Option<f64>,
    /// Tr(rho0 rho1) of the conditional environment states; absent when an alternative has p = 0.
    pub hs: Option<f64>,
    /// Sub-fidelity of the conditional environment states; absent when an alternative has p = 0.
    pub subfid: Option<f64>,
}

impl MeasureReport {
    pub fn compute(psi: &PureState) -> Result<Self> {
        let pair = conditional_env_states(psi);
        let (hs, subfid) = match pair.states() {
            Some((r0, r1)) => (Some(hs_overlap(r0, r1)?), Some(sub_fidelity(r0, r1)?)),
            None => (None, None),
        };
        let alice = psi.dims().alice();
        let c3 = if alice == 3 {
            let rho_ab = psi.reduced(&[0, 1])?;
            Some(2.0 * c3_newton(&cross_operator(&rho_ab)?.matrix)?)
        } else {
            None
        };
        Ok(Self {
            dims: psi.dims().as_triple(),
            p0: pair.p0,
            p1: pair.p1,
            c1: c1(psi)?,
            c2_subfid: if alice == 2 { Some(c2_subfidelity(psi)?) } else { None },
            ca_tracenorm: ca_trace_norm(psi)?,
            c3_newton: c3,
            hs,
            subfid,
        })
    }
}

fn same_dim(x: &DensityOperator, y: &DensityOperator) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::ShapeMismatch(format!("{} vs {}", x.dim(), y.dim())));
    }
    Ok(())
}

fn real_part(z: Complex64) -> Result<f64> {
    if z.im.abs() > NOT_REAL_TOL {
        return Err(Error::NotReal(z.im));
    }
    Ok(z.re)
}

/// 2 |<0|rho|1>| for a qubit state.
pub fn coherence(rho: &DensityOperator) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(Error::BadShape(format!(
            "coherence needs a qubit, got dimension {}",
            rho.dim()
        )));
    }
    Ok(2.0 * rho.matrix()[(0, 1)].norm())
}

/// Hilbert-Schmidt overlap Tr(x y).
pub fn hs_overlap(x: &DensityOperator, y: &DensityOperator) -> Result<f64> {
    same_dim(x, y)?;
    real_part(x.matrix().trace_of_product(y.matrix())?)
}

fn is_pure(x: &DensityOperator) -> bool {
    let m = x.matrix();
    let tr = m.trace().re;
    let purity = m.trace_of_product(m).map_or(0.0, |z| z.re);
    (1.0 - purity / (tr * tr)).abs() <= PURE_TOL
}

/// E(x, y) = Tr(xy) + sqrt 2 sqrt(Tr(xy)^2 - Tr(xyxy)).
///
/// xy has rank 1 when either input is pure, so the radicand is then exactly 0.
pub fn sub_fidelity(x: &DensityOperator, y: &DensityOperator) -> Result<f64> {
    same_dim(x, y)?;
    let xy = x.matrix() * y.matrix();
    let overlap = real_part(xy.trace())?;
    if is_pure(x) || is_pure(y) {
        return Ok(overlap);
    }
    let second = real_part(xy.trace_of_product(&xy)?)?;
    let radicand = overlap * overlap - second;
    if radicand < -RADICAND_CLAMP {
        return Err(Error::NumericalBreakdown(format!(
            "sub-fidelity radicand {radicand:e} is negative; inputs are not PSD"
        )));
    }
    Ok(overlap + std::f64::consts::SQRT_2 * radicand.max(0.0).sqrt())
}

/// Uhlmann fidelity (Tr sqrt(sqrt(x) y sqrt(x)))^2, equal to Tr(xy) when either input is pure.
pub fn uhlmann_fidelity(x: &DensityOperator, y: &DensityOperator) -> Result<f64> {
    same_dim(x, y)?;
    if is_pure(x) || is_pure(y) {
        return hs_overlap(x, y);
    }
    let root = psd_sqrt(x.matrix())?;
    let inner = (&(&root * y.matrix()) * &root).hermitian_part();
    let values = hermitian_eigenvalues(&inner)?;
    let floor = FIDELITY_EIGEN_FLOOR * values.last().copied().unwrap_or(0.0).max(0.0);
    let mut sum = 0.0;
    for lambda in values {
        if lambda < -FIDELITY_PSD_CLAMP {
            return Err(Error::NotPsd { eigenvalue: lambda });
        }
        if lambda > floor {
            sum += lambda.sqrt();
        }
    }
    Ok(sum * sum)
}

/// Coherence of Bob's qubit when nobody steers: the environment is all of A x E.
pub fn c1(psi: &PureState) -> Result<f64> {
    coherence(&psi.reduced(&[1])?)
}

/// 2 Tr|chi_A| with chi_A = <0_B| rho_AB |1_B>.
///
/// This is C2 for a qubit A, C3 for a qutrit, and C_a in general.
pub fn ca_trace_norm(psi: &PureState) -> Result<f64> {
    let rho_ab = psi.reduced(&[0, 1])?;
    Ok(2.0 * trace_norm(&cross_operator(&rho_ab)?.matrix)?)
}

/// 2 sqrt(p0 p1 E(rho0, rho1)) from the environment states conditioned on Bob's
/// alternatives. Never touches rho_AB.
pub fn c2_subfidelity(psi: &PureState) -> Result<f64> {
    let alice = psi.dims().alice();
    if alice != 2 {
        return Err(Error::WrongAliceDimension {
            expected: 2,
            actual: alice,
        });
    }
    let pair = conditional_env_states(psi);
    let Some((rho0, rho1)) = pair.states() else {
        return Ok(0.0);
    };
    let e = sub_fidelity(rho0, rho1)?;
    Ok(2.0 * (pair.p0 * pair.p1 * e).max(0.0).sqrt())
}

/// Elementary symmetric polynomials s_1..s_n from power sums t_1..t_n
/// (Newton's identities: i s_i = sum_{j=1..i} (-1)^{j-1} s_{i-j} t_j).
pub fn elementary_symmetric_from_power_sums(t: &[f64]) -> Vec<f64> {
    let mut s = Vec::with_capacity(t.len() + 1);
    s.push(1.0);
    for i in 1..=t.len() {
        let mut acc = 0.0;
        for j in 1..=i {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * s[i - j] * t[j - 1];
        }
        s.push(acc / i as f64);
    }
    s.split_off(1)
}

/// Largest root T of T^4 - 2 s1 T^2 - 8 sqrt(s3) T + (s1^2 - 4 s2) = 0,
/// i.e. sqrt(a) + sqrt(b) + sqrt(c) for the eigenvalues a, b, c of chi^dagger chi.
///
/// The quartic is the doubly squared form of T = sqrt(s1 + 2 sqrt(s2 + 2 sqrt(s3) T)).
/// Its largest root is refined on that self-consistent equation, a contraction
/// (slope at most 2/9) that stays well conditioned when roots of the quartic pair up.
pub fn quartic_trace_norm(s1: f64, s2: f64, s3: f64) -> Result<f64> {
    if s1 <= 0.0 {
        return Ok(0.0);
    }
    let (s2, s3) = (s2.max(0.0), s3.max(0.0));
    // T = sqrt(s1) u keeps the coefficients O(1)
    let q = 8.0 * s3.sqrt() / s1.powf(1.5);
    let r = 1.0 - 4.0 * s2 / (s1 * s1);
    let roots = real_quartic_roots(1.0, 0.0, -2.0, -q, r)?;
    let largest = roots.last().copied().ok_or(Error::NoRealRoot)?;

    let sqrt_s3 = s3.sqrt();
    let update = |t: f64| (s1 + 2.0 * (s2 + 2.0 * sqrt_s3 * t).sqrt()).sqrt();
    let mut t = s1.sqrt() * largest.max(0.0);
    for _ in 0..MAX_FIXED_POINT_STEPS {
        let next = update(t);
        let done = (next - t).abs() <= f64::EPSILON * next;
        t = next;
        if done {
            break;
        }
    }
    Ok(t)
}

/// Tr|chi| for a 3x3 chi via Newton's identities and the quartic.
pub fn c3_newton(chi: &ComplexMatrix) -> Result<f64> {
    if chi.rows() != 3 || chi.cols() != 3 {
        return Err(Error::BadShape(format!(
            "c3_newton needs 3x3, got {}x{}",
            chi.rows(),
            chi.cols()
        )));
    }
    let y = &chi.adjoint() * chi;
    let t: Vec<f64> = power_sums(&y, 3)?.into_iter().map(|z| z.re).collect();
    let s = elementary_symmetric_from_power_sums(&t);
    let s1 = s[0];
    let s2 = if s[1] <= RELATIVE_ZERO * s1 * s1 { 0.0 } else { s[1] };
    let s3 = if s[2] <= RELATIVE_ZERO * s1.powi(3) { 0.0 } else { s[2] };
    let value = quartic_trace_norm(s1, s2, s3).map_err(|e| match e {
        Error::NoRealRoot => Error::NumericalBreakdown("no real root for a PSD chi^dagger chi".into()),
        other => other,
    })?;
    debug_assert!(
        trace_norm(chi).map_or(true, |direct| (direct - value).abs() <= 1e-6 * direct.max(1.0)),
        "quartic route disagrees with the singular value route"
    );
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{complex_gaussian_matrix, haar_unitary, rng_from_seed};
    use crate::states::TripartiteDims;
    use approx::assert_abs_diff_eq;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn qubit(rows: &[&[f64]]) -> DensityOperator {
        DensityOperator::single(ComplexMatrix::from_real_rows(rows).unwrap()).unwrap()
    }

    fn pure(v: &[Complex64]) -> DensityOperator {
        DensityOperator::single(ComplexMatrix::outer(v, v)).unwrap()
    }

    fn state(a: usize, e: usize, amps: Vec<Complex64>) -> PureState {
        PureState::from_amplitudes(TripartiteDims::new(a, e).unwrap(), amps).unwrap()
    }

    fn ghz() -> PureState {
        let mut amps = vec![c(0.0); 8];
        amps[0] = c(H);
        amps[7] = c(H);
        state(2, 2, amps)
    }

    fn bell_ab() -> PureState {
        state(2, 1, vec![c(H), c(0.0), c(0.0), c(H)])
    }

    #[test]
    fn coherence_examples() {
        assert_eq!(coherence(&qubit(&[&[0.5, 0.0], &[0.0, 0.5]])).unwrap(), 0.0);
        assert_abs_diff_eq!(
            coherence(&qubit(&[&[0.5, 0.5], &[0.5, 0.5]])).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            coherence(&qubit(&[&[0.5, 0.3], &[0.3, 0.5]])).unwrap(),
            0.6,
            epsilon = 1e-15
        );
        let qutrit = DensityOperator::single(ComplexMatrix::identity(3).scale_real(1.0 / 3.0)).unwrap();
        assert!(matches!(coherence(&qutrit), Err(Error::BadShape(_))));
    }

    #[test]
    fn overlap_examples() {
        let zero = qubit(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let one = qubit(&[&[0.0, 0.0], &[0.0, 1.0]]);
        let mixed = qubit(&[&[0.5, 0.0], &[0.0, 0.5]]);
        let plus = pure(&[c(H), Complex64::new(0.0, H)]);

        assert_abs_diff_eq!(hs_overlap(&plus, &plus).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(hs_overlap(&zero, &one).unwrap(), 0.0);
        assert_abs_diff_eq!(hs_overlap(&mixed, &zero).unwrap(), 0.5, epsilon = 1e-15);

        assert_abs_diff_eq!(sub_fidelity(&plus, &plus).unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(sub_fidelity(&zero, &one).unwrap(), 0.0);
        assert_abs_diff_eq!(sub_fidelity(&mixed, &mixed).unwrap(), 1.0, epsilon = 1e-15);

        assert_abs_diff_eq!(uhlmann_fidelity(&plus, &plus).unwrap(), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(uhlmann_fidelity(&mixed, &mixed).unwrap(), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(uhlmann_fidelity(&zero, &one).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(uhlmann_fidelity(&mixed, &zero).unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn overlap_shape_mismatch() {
        let q = qubit(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let t = DensityOperator::single(ComplexMatrix::identity(3).scale_real(1.0 / 3.0)).unwrap();
        assert!(matches!(hs_overlap(&q, &t), Err(Error::ShapeMismatch(_))));
        assert!(matches!(sub_fidelity(&q, &t), Err(Error::ShapeMismatch(_))));
        assert!(matches!(uhlmann_fidelity(&q, &t), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn sub_fidelity_rejects_invalid_radicand() {
        // bypass validation with a non-PSD "state" to hit the breakdown path
        let bad = DensityOperator::from_parts_unchecked(ComplexMatrix::from_diagonal(&[2.0, -1.0]), vec![2]);
        let good = DensityOperator::from_parts_unchecked(ComplexMatrix::from_diagonal(&[0.5, 0.5]), vec![2]);
        // Tr(xy) = 0.5, Tr(xyxy) = 1.25
        assert!(matches!(sub_fidelity(&bad, &good), Err(Error::NumericalBreakdown(_))));
    }

    #[test]
    fn pure_pairs_agree_to_rounding() {
        let mut rng = rng_from_seed(31);
        for d in [2, 3, 5] {
            for _ in 0..200 {
                let pure = |rng: &mut crate::random::SeededRng| {
                    let v = complex_gaussian_matrix(d, 1, rng);
                    let p = &v * &v.adjoint();
                    let tr = p.trace().re;
                    DensityOperator::single(p.scale_real(1.0 / tr)).unwrap()
                };
                let (x, y) = (pure(&mut rng), pure(&mut rng));
                let e = sub_fidelity(&x, &y).unwrap();
                let f = uhlmann_fidelity(&x, &y).unwrap();
                assert!((e - f).abs() <= 1e-12, "d={d}: {e} vs {f}");
                assert!((e - hs_overlap(&x, &y).unwrap()).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn sub_fidelity_is_symmetric_and_unitarily_invariant() {
        let mut rng = rng_from_seed(77);
        for seed in 0..40 {
            let dims = TripartiteDims::new(2, 3).unwrap();
            let pair = conditional_env_states(&PureState::haar_sample(dims, seed));
            let (x, y) = pair.states().unwrap();
            let forward = sub_fidelity(x, y).unwrap();
            assert_eq!(forward, sub_fidelity(y, x).unwrap());

            let u = haar_unitary(3, &mut rng);
            let rot = |r: &DensityOperator| DensityOperator::single(&(&u * r.matrix()) * &u.adjoint()).unwrap();
            assert_abs_diff_eq!(sub_fidelity(&rot(x), &rot(y)).unwrap(), forward, epsilon = 1e-10);
        }
    }

    #[test]
    fn c1_examples() {
        assert_eq!(c1(&ghz()).unwrap(), 0.0);
        // |0_A> |+_B> |0_E>
        let plus_b = state(1, 1, vec![c(H), c(H)]);
        assert_abs_diff_eq!(c1(&plus_b).unwrap(), 1.0, epsilon = 1e-15);
        for phi in [0.0, 0.7, 2.0] {
            assert_abs_diff_eq!(c1(&PureState::mzi(0.5, phi).unwrap()).unwrap(), 0.5, epsilon = 1e-15);
        }
        assert_eq!(c1(&PureState::mzi(0.0, 0.0).unwrap()).unwrap(), 0.0);
        assert_abs_diff_eq!(c1(&PureState::mzi(1.0, 0.0).unwrap()).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn c1_equals_fidelity_form_over_full_environment() {
        // regroup the state as B x (A E) and use the conditional states of A E
        for (a, e, seed) in [(1, 3, 1), (2, 2, 2), (3, 2, 3)] {
            let psi = PureState::haar_sample(TripartiteDims::new(a, e).unwrap(), seed);
            let mut amps = vec![c(0.0); psi.amplitudes().len()];
            for ia in 0..a {
                for b in 0..2 {
                    for ie in 0..e {
                        amps[b * a * e + ia * e + ie] = psi.amplitude(ia, b, ie);
                    }
                }
            }
            let regrouped = state(1, a * e, amps);
            let pair = conditional_env_states(&regrouped);
            let (r0, r1) = pair.states().unwrap();
            let fidelity_form = 2.0 * (pair.p0 * pair.p1 * hs_overlap(r0, r1).unwrap()).sqrt();
            assert_abs_diff_eq!(c1(&psi).unwrap(), fidelity_form, epsilon = 1e-12);
        }
    }

    #[test]
    fn ca_trace_norm_examples() {
        assert_abs_diff_eq!(ca_trace_norm(&bell_ab()).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ca_trace_norm(&ghz()).unwrap(), 0.0, epsilon = 1e-15);
        let (alpha, beta) = (0.6, Complex64::new(0.0, 0.8));
        let psi = state(2, 1, vec![c(alpha), c(0.0), c(0.0), beta]);
        assert_abs_diff_eq!(ca_trace_norm(&psi).unwrap(), 2.0 * 0.6 * 0.8, epsilon = 1e-14);
    }

    #[test]
    fn c2_subfidelity_examples() {
        let (alpha, beta) = (0.6, Complex64::new(0.0, 0.8));
        let psi = state(2, 1, vec![c(alpha), c(0.0), c(0.0), beta]);
        assert_abs_diff_eq!(c2_subfidelity(&psi).unwrap(), 0.96, epsilon = 1e-14);
        assert_abs_diff_eq!(c2_subfidelity(&ghz()).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c2_subfidelity(&bell_ab()).unwrap(), 1.0, epsilon = 1e-14);
        assert!(matches!(
            c2_subfidelity(&PureState::mzi(0.5, 0.0).unwrap()),
            Err(Error::WrongAliceDimension { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn c2_degenerate_alternative_is_zero() {
        // Bob sits in |0>: p1 = 0
        let psi = state(2, 1, vec![c(H), c(0.0), c(H), c(0.0)]);
        assert_eq!(c2_subfidelity(&psi).unwrap(), 0.0);
        assert_eq!(ca_trace_norm(&psi).unwrap(), 0.0);
    }

    #[test]
    fn c2_routes_agree_on_haar_states() {
        for k in 1..=8 {
            let dims = TripartiteDims::new(2, k).unwrap();
            for seed in 0..50 {
                let psi = PureState::haar_sample(dims, 1000 * k as u64 + seed);
                let via_subfid = c2_subfidelity(&psi).unwrap();
                let via_trace_norm = ca_trace_norm(&psi).unwrap();
                assert!((via_subfid - via_trace_norm).abs() <= 1e-9, "K={k} seed={seed}");
            }
        }
    }

    #[test]
    fn newton_identity_examples() {
        let s = elementary_symmetric_from_power_sums(&[2.0, 2.0]);
        assert_eq!(s, vec![2.0, 1.0]);
        let s = elementary_symmetric_from_power_sums(&[6.0, 14.0, 36.0]);
        for (a, e) in s.iter().zip([6.0, 11.0, 6.0]) {
            assert_abs_diff_eq!(*a, e, epsilon = 1e-12);
        }
        assert_eq!(elementary_symmetric_from_power_sums(&[5.0]), vec![5.0]);
    }

    #[test]
    fn newton_identities_match_spectrum() {
        let mut rng = rng_from_seed(8);
        for _ in 0..50 {
            let m = complex_gaussian_matrix(3, 3, &mut rng);
            let y = &m.adjoint() * &m;
            let t: Vec<f64> = power_sums(&y, 3).unwrap().iter().map(|z| z.re).collect();
            let s = elementary_symmetric_from_power_sums(&t);
            let l = hermitian_eigenvalues(&y).unwrap();
            let oracle = [
                l[0] + l[1] + l[2],
                l[0] * l[1] + l[1] * l[2] + l[0] * l[2],
                l[0] * l[1] * l[2],
            ];
            for (a, e) in s.iter().zip(oracle) {
                assert!((a - e).abs() <= 1e-8 * e.abs().max(1.0), "{s:?} vs {oracle:?}");
            }
        }
    }

    #[test]
    fn c3_newton_examples() {
        // singular values (1, 1, 1): quartic t^4 - 6t^2 - 8t - 3 has largest root 3
        assert_abs_diff_eq!(c3_newton(&ComplexMatrix::identity(3)).unwrap(), 3.0, epsilon = 1e-12);
        let mut rng = rng_from_seed(4);
        let u = haar_unitary(3, &mut rng);
        assert_abs_diff_eq!(c3_newton(&u).unwrap(), 3.0, epsilon = 1e-10);
        assert_eq!(c3_newton(&ComplexMatrix::zeros(3, 3)).unwrap(), 0.0);
        assert!(matches!(
            c3_newton(&ComplexMatrix::identity(2)),
            Err(Error::BadShape(_))
        ));
    }

    #[test]
    fn c3_newton_matches_trace_norm() {
        let mut rng = rng_from_seed(12);
        for _ in 0..200 {
            let chi = complex_gaussian_matrix(3, 3, &mut rng);
            let direct = trace_norm(&chi).unwrap();
            assert_abs_diff_eq!(c3_newton(&chi).unwrap(), direct, epsilon = 1e-8);
        }
    }

    #[test]
    fn c3_newton_low_rank() {
        let mut rng = rng_from_seed(13);
        for rank in [1, 2] {
            for _ in 0..50 {
                let chi = &complex_gaussian_matrix(3, rank, &mut rng) * &complex_gaussian_matrix(rank, 3, &mut rng);
                let direct = trace_norm(&chi).unwrap();
                assert_abs_diff_eq!(c3_newton(&chi).unwrap(), direct, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn quartic_reduces_to_two_singular_values() {
        for (a, b) in [(1.0_f64, 0.25_f64), (2.0, 2.0), (0.3, 0.0), (5.0, 1e-3)] {
            let (s1, s2) = (a + b, a * b);
            let expected = (s1 + 2.0 * s2.sqrt()).sqrt();
            assert_abs_diff_eq!(quartic_trace_norm(s1, s2, 0.0).unwrap(), expected, epsilon = 1e-9);
            assert_abs_diff_eq!(expected, a.sqrt() + b.sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn measure_report_fields_by_dimension() {
        let r = MeasureReport::compute(&bell_ab()).unwrap();
        assert_eq!(r.c1, 0.0);
        assert_abs_diff_eq!(r.c2_subfid.unwrap(), 1.0, epsilon = 1e-14);
        assert!(r.c3_newton.is_none());

        let psi = PureState::haar_sample(TripartiteDims::new(3, 2).unwrap(), 3);
        let r = MeasureReport::compute(&psi).unwrap();
        assert!(r.c2_subfid.is_none());
        assert_abs_diff_eq!(r.c3_newton.unwrap(), r.ca_tracenorm, epsilon = 1e-8);
        assert!(r.c1 <= r.ca_tracenorm + 1e-9);

        let r = MeasureReport::compute(&PureState::mzi(0.5, 0.0).unwrap()).unwrap();
        assert_abs_diff_eq!(r.c1, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.ca_tracenorm, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(r.hs.unwrap(), 0.25, epsilon = 1e-15);
    }
}
