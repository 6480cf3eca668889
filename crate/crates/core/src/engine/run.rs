use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::pattern::{adapted_angle, MeasurementPattern, OutcomeRecord, PauliFrame};
use crate::error::{Error, Result};
use crate::qsim::StateVector;

/// How measurement outcomes are chosen during a run.
#[derive(Debug, Clone, PartialEq)]
pub enum OutcomeMode {
    /// Born-rule sampling from a ChaCha8 stream seeded with this value.
    Sampled(u64),
    /// One outcome bit per step, in step order.
    Forced(Vec<u8>),
}

#[derive(Debug, Clone, Serialize)]
pub struct RunResult {
    /// State of the output qubits, ascending qubit order.
    pub state: StateVector,
    pub record: OutcomeRecord,
    pub frame: PauliFrame,
    pub seed: Option<u64>,
}

pub(crate) fn check_resource(resource: &StateVector, pattern: &MeasurementPattern) -> Result<()> {
    if resource.num_qubits() != pattern.layout().num_qubits() {
        return Err(Error::validation(format!(
            "resource has {} qubits, layout has {}",
            resource.num_qubits(),
            pattern.layout().num_qubits()
        )));
    }
    Ok(())
}

/// Position of `qubit` in a state from which the `removed` qubits (sorted)
/// have been measured out.
pub(crate) fn current_position(qubit: usize, removed: &[usize]) -> usize {
    qubit - removed.partition_point(|&q| q < qubit)
}

pub(crate) fn insert_sorted(removed: &mut Vec<usize>, qubit: usize) {
    let at = removed.partition_point(|&q| q < qubit);
    removed.insert(at, qubit);
}

/// Executes the pattern on `resource` along one trajectory.
pub fn run_pattern(
    resource: &StateVector,
    pattern: &MeasurementPattern,
    mode: &OutcomeMode,
) -> Result<RunResult> {
    check_resource(resource, pattern)?;
    let (mut rng, forced, seed) = match mode {
        OutcomeMode::Sampled(seed) => (Some(ChaCha8Rng::seed_from_u64(*seed)), None, Some(*seed)),
        OutcomeMode::Forced(bits) => {
            if bits.len() != pattern.num_measured() {
                return Err(Error::validation(format!(
                    "{} forced outcomes for {} measurements",
                    bits.len(),
                    pattern.num_measured()
                )));
            }
            if let Some(b) = bits.iter().find(|&&b| b > 1) {
                return Err(Error::validation(format!(
                    "forced outcome {b} is not a bit"
                )));
            }
            (None, Some(bits), None)
        }
    };

    let mut state = resource.clone();
    let mut record = OutcomeRecord::new();
    let mut removed = Vec::with_capacity(pattern.num_measured());
    for (i, step) in pattern.steps().iter().enumerate() {
        let angle = adapted_angle(step, &record)?;
        let pos = current_position(step.qubit, &removed);
        let branches = state.measure_xy_branches(pos, angle)?;
        let outcome = match (&mut rng, forced) {
            (Some(rng), _) => u8::from(rng.random::<f64>() >= branches[0].probability),
            (None, Some(bits)) => bits[i],
            (None, None) => unreachable!(),
        };
        let [b0, b1] = branches;
        let chosen = if outcome == 0 { b0 } else { b1 };
        let next = chosen.state.ok_or(Error::ImpossibleBranch {
            qubit: step.qubit,
            outcome,
            probability: chosen.probability,
        })?;
        record.probability *= chosen.probability;
        record.outcomes.insert(step.qubit, outcome);
        insert_sorted(&mut removed, step.qubit);
        state = next;
    }
    let frame = PauliFrame::compute(pattern, &record)?;
    Ok(RunResult {
        state,
        record,
        frame,
        seed,
    })
}
