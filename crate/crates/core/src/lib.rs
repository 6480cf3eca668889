//! Simulation and verification harness for measurement-based quantum
//! computation (MBQC) on cluster and graph resource states.
//!
//! The crate is split into layers:
//!
//! * [`qsim`]: dense pure states, small density matrices, Pauli operators
//!   and Shannon entropy.
//! * [`graph`]: cluster/graph resource construction on the `n x m` lattice
//!   and the leading/trailing column regions.
//! * [`engine`]: adaptive measurement patterns, single-trajectory execution,
//!   exhaustive trajectory enumeration and byproduct (Pauli frame) tracking.
//! * [`verify`]: no-signaling, post-measurement decomposition and quantum
//!   one-time-pad checks on the trajectory ensemble.
//! * [`thermo`]: classical memory ledger, Landauer heat and the
//!   Sagawa–Ueda erasure-work bound.
//! * [`report`]: deterministic JSON emission shared by the command line tool.

pub mod engine;
pub mod error;
pub mod graph;
pub mod qsim;
pub mod report;
pub mod thermo;
pub mod verify;

pub use engine::{
    adapted_angle, byproduct_of, enumerate_trajectories, run_pattern, Builtin, LatticeProgram,
    MeasurementPattern, OutcomeMode, OutcomeRecord, PatternFile, PatternStep, PauliFrame,
    RunResult, Trajectory, TrajectoryEnsemble,
};
pub use error::{Error, Result};
pub use graph::{build_cluster, encode_input, region, ClusterLayout, Region, RegionKind};
pub use qsim::{
    fidelity_pure, shannon_entropy, trace_distance, DensityMatrix, LogBase, PauliOperator,
    ProbabilityDistribution, StateVector,
};

/// Version string embedded in every emitted report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
