//! Small dense complex linear algebra: Hermitian spectra, trace norm,
//! PSD square roots, matrix power sums and real quartic roots.
//!
//! Everything here targets dimensions up to 64 and double precision.

mod matrix;
mod quartic;
mod spectral;

pub use matrix::ComplexMatrix;
pub use quartic::{real_quartic_roots, RESIDUAL_TOL as QUARTIC_RESIDUAL_TOL};
pub use spectral::{
    hermitian_eigen, hermitian_eigenvalues, power_sums, psd_sqrt, singular_values, trace_norm, HermitianEigen,
    HERMITIAN_TOL, PSD_CLAMP, TRACE_NORM_CLAMP,
};
