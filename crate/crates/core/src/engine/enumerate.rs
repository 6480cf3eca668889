use serde::Serialize;

use super::pattern::{adapted_angle, MeasurementPattern, OutcomeRecord, PauliFrame};
use super::run::{check_resource, current_position, insert_sorted};
use crate::error::{Error, Result};
use crate::qsim::{
    partial_trace, shannon_entropy, DensityMatrix, LogBase, ProbabilityDistribution, StateVector,
};

/// Branch-count guard: at most this many measured qubits.
pub const MAX_ENUMERATED_MEASUREMENTS: usize = 16;

/// Subtrees with fewer remaining steps than this are expanded serially.
const PARALLEL_MIN_REMAINING: usize = 4;

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub record: OutcomeRecord,
    /// State of the output qubits, ascending qubit order.
    pub state: StateVector,
    pub frame: PauliFrame,
}

/// Every nonzero-probability outcome branch of a pattern, ordered
/// depth-first with outcome 0 before outcome 1.
#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryEnsemble {
    pub pattern: MeasurementPattern,
    pub trajectories: Vec<Trajectory>,
}

impl TrajectoryEnsemble {
    pub fn len(&self) -> usize {
        self.trajectories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trajectories.is_empty()
    }

    pub fn total_probability(&self) -> f64 {
        self.trajectories.iter().map(|t| t.record.probability).sum()
    }

    /// Trajectory probabilities labelled by outcome bitstring.
    pub fn distribution(&self) -> Result<ProbabilityDistribution> {
        let (p, labels) = self
            .trajectories
            .iter()
            .map(|t| (t.record.probability, t.record.bitstring()))
            .unzip();
        ProbabilityDistribution::with_labels(p, labels)
    }

    pub fn entropy_bits(&self) -> Result<f64> {
        Ok(shannon_entropy(&self.distribution()?, LogBase::Two))
    }

    /// `Σ_j p_j Tr_rest |ψ_j><ψ_j|` on `subset` (qubit indices, which must all
    /// be outputs).
    pub fn mixed_marginal(&self, subset: &[usize]) -> Result<DensityMatrix> {
        let outputs = self.pattern.outputs();
        let positions = subset
            .iter()
            .map(|q| {
                outputs
                    .binary_search(q)
                    .map_err(|_| Error::validation(format!("qubit {q} is not an output")))
            })
            .collect::<Result<Vec<_>>>()?;
        let whole = positions.iter().copied().eq(0..outputs.len());
        let mut mix = DensityMatrix::zeros(positions.len())?;
        for t in &self.trajectories {
            if whole {
                mix.accumulate_pure(t.record.probability, &t.state)?;
            } else {
                mix.accumulate(t.record.probability, &partial_trace(&t.state, &positions)?)?;
            }
        }
        Ok(mix)
    }
}

/// Expands both outcomes of every step, multiplying branch probabilities and
/// pruning branches below the zero-probability threshold.
pub fn enumerate_trajectories(
    resource: &StateVector,
    pattern: &MeasurementPattern,
) -> Result<TrajectoryEnsemble> {
    check_resource(resource, pattern)?;
    if pattern.num_measured() > MAX_ENUMERATED_MEASUREMENTS {
        return Err(Error::Capacity {
            what: "enumerated measurement count",
            got: pattern.num_measured(),
            limit: MAX_ENUMERATED_MEASUREMENTS,
        });
    }
    let mut trajectories = Vec::new();
    expand(
        pattern,
        0,
        resource.clone(),
        OutcomeRecord::new(),
        Vec::new(),
        &mut trajectories,
    )?;
    Ok(TrajectoryEnsemble {
        pattern: pattern.clone(),
        trajectories,
    })
}

fn expand(
    pattern: &MeasurementPattern,
    index: usize,
    state: StateVector,
    record: OutcomeRecord,
    removed: Vec<usize>,
    out: &mut Vec<Trajectory>,
) -> Result<()> {
    let Some(step) = pattern.steps().get(index) else {
        let frame = PauliFrame::compute(pattern, &record)?;
        out.push(Trajectory {
            record,
            state,
            frame,
        });
        return Ok(());
    };
    let angle = adapted_angle(step, &record)?;
    let branches = state.measure_xy_branches(current_position(step.qubit, &removed), angle)?;
    drop(state);

    let mut children = Vec::with_capacity(2);
    for branch in branches {
        let Some(next) = branch.state else { continue };
        let mut rec = record.clone();
        rec.probability *= branch.probability;
        rec.outcomes.insert(step.qubit, branch.outcome);
        let mut rem = removed.clone();
        insert_sorted(&mut rem, step.qubit);
        children.push((next, rec, rem));
    }

    let remaining = pattern.num_measured() - index - 1;
    if children.len() == 2 && remaining >= PARALLEL_MIN_REMAINING {
        let (s1, r1, m1) = children.pop().unwrap();
        let (s0, r0, m0) = children.pop().unwrap();
        let mut right = Vec::new();
        let (left_res, right_res) = rayon::join(
            || {
                let mut left = Vec::new();
                expand(pattern, index + 1, s0, r0, m0, &mut left).map(|_| left)
            },
            || expand(pattern, index + 1, s1, r1, m1, &mut right),
        );
        out.extend(left_res?);
        right_res?;
        out.append(&mut right);
    } else {
        for (s, r, m) in children {
            expand(pattern, index + 1, s, r, m, out)?;
        }
    }
    Ok(())
}
