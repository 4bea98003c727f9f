use rand::Rng;

use crate::matkernel::ComplexMatrix;
use crate::random::{complex_gaussian_matrix, haar_unitary};

pub fn random_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    complex_gaussian_matrix(rows, cols, rng)
}

pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix {
    complex_gaussian_matrix(dim, dim, rng).hermitian_part()
}

pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix {
    haar_unitary(dim, rng)
}
