//! Dense linear algebra for small qubit systems.

pub mod density;
pub mod entropy;
pub mod gates;
pub mod pauli;
pub mod state;

use num_complex::Complex64;

pub use density::{partial_trace, trace_distance, DensityMatrix, MAX_DENSITY_QUBITS};
pub use entropy::{shannon_entropy, LogBase, ProbabilityDistribution};
pub use pauli::PauliOperator;
pub use state::{fidelity_pure, Branch, Matrix2, StateVector, MAX_STATE_QUBITS};

pub(crate) const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Branches below this probability are treated as impossible.
pub const ZERO_BRANCH_THRESHOLD: f64 = 1e-14;
pub(crate) const UNITARY_TOLERANCE: f64 = 1e-10;
