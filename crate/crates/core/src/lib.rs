//! How much of a qubit's coherence survives an environment, and how much of it
//! a steering party can recover by measuring a correlated system.

pub mod ensemble;
pub mod eraser;
pub mod error;
pub mod matkernel;
pub mod measures;
pub mod probe;
pub mod random;
pub mod states;
pub mod steering;
pub mod validation;

#[cfg(test)]
mod test_support;

pub use error::{Error, Result};
pub use matkernel::ComplexMatrix;
pub use measures::MeasureReport;
pub use states::{ConditionalEnvPair, CrossOperator, DensityOperator, PureState, StateFile, TripartiteDims};
