use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Symmetry tolerance accepted by the Hermitian routines.
pub const HERMITIAN_TOL: f64 = 1e-10;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;
/// Eigenvalues of M^dagger M in [-TRACE_NORM_CLAMP, 0) are treated as zero.
pub const TRACE_NORM_CLAMP: f64 = 1e-12;
/// Eigenvalues in [-PSD_CLAMP, 0) are treated as zero by `psd_sqrt`.
pub const PSD_CLAMP: f64 = 1e-10;

/// Eigenvalues (ascending) and matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// V diag(f(lambda)) V^dagger
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let w = f(lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }
}

fn check_hermitian(h: &ComplexMatrix) -> Result<usize> {
    let n = h.ensure_square()?;
    let deviation = h.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(n)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic complex Jacobi sweeps on the Hermitian part of `h`.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = check_hermitian(h)?;
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    let mut converged = off_diagonal_norm(&a) <= OFF_DIAGONAL_TOL * scale;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NumericalBreakdown(format!(
                "Jacobi did not converge in {MAX_SWEEPS} sweeps (off-diagonal {:e})",
                off_diagonal_norm(&a)
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&a) <= OFF_DIAGONAL_TOL * scale;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, k)] = v[(i, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Zeroes a[p][q] with a unitary rotation in the (p, q) plane: A <- J^dagger A J, V <- V J.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // phase that makes the (p, q) entry real and positive
    let phase = g / g_abs;
    let theta = (aqq - app) / (2.0 * g_abs);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    if t == 0.0 {
        return;
    }
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // J restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.rows();
    // A <- A J (columns p, q)
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * jpp + aiq * jqp;
        a[(i, q)] = aip * jpq + aiq * jqq;
    }
    // A <- J^dagger A (rows p, q)
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = jpp.conj() * apj + jqp.conj() * aqj;
        a[(q, j)] = jpq.conj() * apj + jqq.conj() * aqj;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * jpp + viq * jqp;
        v[(i, q)] = vip * jpq + viq * jqq;
    }
}

/// All eigenvalues of a Hermitian matrix, ascending, with multiplicity.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(h)?.values)
}

/// Singular values from the eigenpairs of M^dagger M, descending.
///
/// Each value is taken as |M v| for the eigenvector v rather than sqrt(lambda),
/// which keeps zero singular values at rounding level instead of sqrt(eps).
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let gram = &m.adjoint() * m;
    let eig = hermitian_eigen(&gram)?;
    let mut out = Vec::with_capacity(gram.rows());
    for (k, &lambda) in eig.values.iter().enumerate().rev() {
        if lambda < -TRACE_NORM_CLAMP {
            return Err(Error::NumericalBreakdown(format!(
                "M^dagger M has eigenvalue {lambda:e}"
            )));
        }
        let mut norm_sqr = 0.0;
        for i in 0..m.rows() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..m.cols() {
                acc += m[(i, j)] * eig.vectors[(j, k)];
            }
            norm_sqr += acc.norm_sqr();
        }
        out.push(norm_sqr.sqrt());
    }
    Ok(out)
}

/// Sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.iter().sum())
}

/// Principal square root of a positive semidefinite matrix.
pub fn psd_sqrt(p: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(p)?;
    if let Some(&lowest) = eig.values.first() {
        if lowest < -PSD_CLAMP {
            return Err(Error::NotPsd { eigenvalue: lowest });
        }
    }
    Ok(eig.reconstruct_with(|lambda| lambda.max(0.0).sqrt()))
}

/// [Tr M, Tr M^2, ..., Tr M^n] by repeated multiplication.
pub fn power_sums(m: &ComplexMatrix, n: usize) -> Result<Vec<Complex64>> {
    m.ensure_square()?;
    if n == 0 {
        return Err(crate::error::out_of_range("n", n, "n >= 1"));
    }
    let mut out = Vec::with_capacity(n);
    out.push(m.trace());
    let mut power = m.clone();
    for _ in 1..n {
        out.push(power.trace_of_product(m)?);
        power = &power * m;
    }
    Ok(out)
}
