//! Seeded randomness shared by the samplers. Every draw is a pure function
//! of an explicit 64-bit seed, so parallel loops stay reproducible.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matkernel::ComplexMatrix;

/// Generator used for every seeded draw in the crate.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent per-item seed for item `index` of a stream rooted at `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(0x5851_F42D_4C95_7F2D)))
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn complex_gaussian_vec<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Complex64> {
    (0..len).map(|_| complex_gaussian(rng)).collect()
}

pub fn complex_gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_vec(rows, cols, complex_gaussian_vec(rows * cols, rng)).expect("gaussian entries are finite")
}

/// Modified Gram-Schmidt on the columns of a square matrix, in place.
///
/// Returns `false` if a column is numerically dependent on the previous ones.
pub fn orthonormalize_columns(m: &mut ComplexMatrix) -> bool {
    let n = m.cols();
    for j in 0..n {
        for k in 0..j {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in 0..m.rows() {
                dot += m[(i, k)].conj() * m[(i, j)];
            }
            for i in 0..m.rows() {
                let mik = m[(i, k)];
                m[(i, j)] -= dot * mik;
            }
        }
        let norm = (0..m.rows()).map(|i| m[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return false;
        }
        for i in 0..m.rows() {
            m[(i, j)] /= norm;
        }
    }
    true
}

/// Haar-distributed unitary: Gram-Schmidt on a complex Gaussian matrix.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let mut m = complex_gaussian_matrix(dim, dim, rng);
        if orthonormalize_columns(&mut m) {
            return m;
        }
    }
}
