//! Adaptive measurement patterns and their execution.

pub mod builtin;
pub mod enumerate;
pub mod file;
pub mod lattice;
pub mod pattern;
pub mod run;

pub use builtin::{builtin_pattern, Builtin};
pub use enumerate::{
    enumerate_trajectories, Trajectory, TrajectoryEnsemble, MAX_ENUMERATED_MEASUREMENTS,
};
pub use file::{InputSpec, NamedInput, PatternFile};
pub use lattice::LatticeProgram;
pub use pattern::{
    adapted_angle, byproduct_of, FrameEntry, MeasurementPattern, OutcomeRecord, PatternStep,
    PauliFrame,
};
pub use run::{run_pattern, OutcomeMode, RunResult};
