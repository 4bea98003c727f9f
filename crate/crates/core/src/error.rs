use thiserror::Error;

/// Errors raised by the kernel, state constructors and measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max |H - H^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },
    #[error("matrix entry at ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),
    #[error("leading coefficient {0:e} is too small for a quartic")]
    DegenerateLeadingCoefficient(f64),
    #[error("no real root")]
    NoRealRoot,
    #[error("expected {expected} amplitudes, got {actual}")]
    BadLength { expected: usize, actual: usize },
    #[error("state norm {0:e} cannot be normalized")]
    NotNormalizable(f64),
    #[error("bad subsystem index selection {0:?}")]
    BadSubsystemIndex(Vec<usize>),
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("value is not real (imaginary part {0:e})")]
    NotReal(f64),
    #[error("operation needs dim(A) = {expected}, state has dim(A) = {actual}")]
    WrongAliceDimension { expected: usize, actual: usize },
    #[error("measurement vectors are not orthonormal (deviation {0:e})")]
    NotOrthonormal(f64),
    #[error("{name} = {value} is out of range ({allowed})")]
    OutOfRange {
        name: &'static str,
        value: String,
        allowed: &'static str,
    },
    #[error("invalid density operator: {0}")]
    InvalidDensity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(name: &'static str, value: impl ToString, allowed: &'static str) -> Error {
    Error::OutOfRange {
        name,
        value: value.to_string(),
        allowed,
    }
}
