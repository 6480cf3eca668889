use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::ClusterLayout;
use crate::qsim::PauliOperator;

/// One adaptive XY-plane measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatternStep {
    pub qubit: usize,
    pub base_angle: f64,
    /// Earlier qubits whose outcome parity flips the sign of the angle.
    pub s_domain: BTreeSet<usize>,
    /// Earlier qubits whose outcome parity adds `π` to the angle.
    pub t_domain: BTreeSet<usize>,
}

impl PatternStep {
    pub fn new(qubit: usize, base_angle: f64) -> Self {
        Self {
            qubit,
            base_angle,
            s_domain: BTreeSet::new(),
            t_domain: BTreeSet::new(),
        }
    }

    pub fn with_domains(
        qubit: usize,
        base_angle: f64,
        s_domain: impl IntoIterator<Item = usize>,
        t_domain: impl IntoIterator<Item = usize>,
    ) -> Self {
        Self {
            qubit,
            base_angle,
            s_domain: s_domain.into_iter().collect(),
            t_domain: t_domain.into_iter().collect(),
        }
    }
}

/// Measurement program over a resource layout.
///
/// Steps run in order. Qubits not measured are outputs; each output carries
/// X and Z correction sets whose outcome parities give its byproduct.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementPattern {
    layout: ClusterLayout,
    steps: Vec<PatternStep>,
    outputs: Vec<usize>,
    x_corrections: BTreeMap<usize, BTreeSet<usize>>,
    z_corrections: BTreeMap<usize, BTreeSet<usize>>,
}

impl MeasurementPattern {
    /// Validates ordering, coverage and correction references. Outputs are
    /// stored in ascending order; correction maps may omit outputs with no
    /// dependencies.
    pub fn new(
        layout: ClusterLayout,
        steps: Vec<PatternStep>,
        outputs: Vec<usize>,
        x_corrections: BTreeMap<usize, BTreeSet<usize>>,
        z_corrections: BTreeMap<usize, BTreeSet<usize>>,
    ) -> Result<Self> {
        let n = layout.num_qubits();
        let mut measured = BTreeSet::new();
        for (i, step) in steps.iter().enumerate() {
            if step.qubit >= n {
                return Err(Error::index(format!(
                    "steps[{i}]: qubit {} outside 0..{n}",
                    step.qubit
                )));
            }
            if !step.base_angle.is_finite() {
                return Err(Error::validation(format!(
                    "steps[{i}]: angle is not finite"
                )));
            }
            for (name, domain) in [("s_domain", &step.s_domain), ("t_domain", &step.t_domain)] {
                if let Some(q) = domain.iter().find(|q| !measured.contains(*q)) {
                    return Err(Error::validation(format!(
                        "steps[{i}].{name}: qubit {q} is not measured before qubit {}",
                        step.qubit
                    )));
                }
            }
            if !measured.insert(step.qubit) {
                return Err(Error::validation(format!(
                    "steps[{i}]: qubit {} measured twice",
                    step.qubit
                )));
            }
        }
        let mut outputs = outputs;
        outputs.sort_unstable();
        if outputs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::validation("outputs: duplicate qubit"));
        }
        if let Some(q) = outputs.iter().find(|q| measured.contains(*q)) {
            return Err(Error::validation(format!(
                "outputs: qubit {q} is also measured"
            )));
        }
        if measured.len() + outputs.len() != n || outputs.iter().any(|&q| q >= n) {
            return Err(Error::validation(format!(
                "measured qubits and outputs must cover all {n} qubits exactly"
            )));
        }
        for (name, map) in [
            ("x_corrections", &x_corrections),
            ("z_corrections", &z_corrections),
        ] {
            for (out, set) in map {
                if outputs.binary_search(out).is_err() {
                    return Err(Error::validation(format!(
                        "{name}: key {out} is not an output"
                    )));
                }
                if let Some(q) = set.iter().find(|q| !measured.contains(*q)) {
                    return Err(Error::validation(format!(
                        "{name}[{out}]: qubit {q} is not measured"
                    )));
                }
            }
        }
        Ok(Self {
            layout,
            steps,
            outputs,
            x_corrections,
            z_corrections,
        })
    }

    /// Pattern with no measurements: every qubit is an output.
    pub fn empty(layout: ClusterLayout) -> Self {
        let outputs = (0..layout.num_qubits()).collect();
        Self {
            layout,
            steps: Vec::new(),
            outputs,
            x_corrections: BTreeMap::new(),
            z_corrections: BTreeMap::new(),
        }
    }

    pub fn layout(&self) -> &ClusterLayout {
        &self.layout
    }

    pub fn steps(&self) -> &[PatternStep] {
        &self.steps
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn x_corrections(&self) -> &BTreeMap<usize, BTreeSet<usize>> {
        &self.x_corrections
    }

    pub fn z_corrections(&self) -> &BTreeMap<usize, BTreeSet<usize>> {
        &self.z_corrections
    }

    pub fn measured(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|s| s.qubit)
    }

    pub fn num_measured(&self) -> usize {
        self.steps.len()
    }

    /// Number of fully measured leading columns when the steps measure the
    /// layout column by column (each column completed before the next one
    /// starts); `None` otherwise.
    pub fn measured_layers(&self) -> Option<usize> {
        let rows = self.layout.rows();
        if !self.steps.len().is_multiple_of(rows) {
            return None;
        }
        let layers = self.steps.len() / rows;
        let mut last_col = 0;
        for step in &self.steps {
            let col = step.qubit / rows;
            if col >= layers || col < last_col {
                return None;
            }
            last_col = col;
        }
        Some(layers)
    }
}

/// Outcomes of the measured qubits along one trajectory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeRecord {
    pub outcomes: BTreeMap<usize, u8>,
    pub probability: f64,
}

impl OutcomeRecord {
    pub fn new() -> Self {
        Self {
            outcomes: BTreeMap::new(),
            probability: 1.0,
        }
    }

    pub fn from_outcomes(
        outcomes: impl IntoIterator<Item = (usize, u8)>,
        probability: f64,
    ) -> Self {
        Self {
            outcomes: outcomes.into_iter().collect(),
            probability,
        }
    }

    /// Parity of the outcomes on `qubits`; errors if any is missing.
    pub fn parity<'a>(&self, qubits: impl IntoIterator<Item = &'a usize>) -> Result<u8> {
        qubits.into_iter().try_fold(0u8, |acc, q| {
            self.outcomes
                .get(q)
                .map(|b| acc ^ b)
                .ok_or_else(|| Error::validation(format!("outcome of qubit {q} is not recorded")))
        })
    }

    /// Outcome bits in ascending qubit order, e.g. `"0110"`.
    pub fn bitstring(&self) -> String {
        self.outcomes
            .values()
            .map(|b| char::from(b'0' + b))
            .collect()
    }
}

impl Default for OutcomeRecord {
    fn default() -> Self {
        Self::new()
    }
}

/// Adapted angle `(−1)^s · base + t·π`.
pub fn adapted_angle(step: &PatternStep, outcomes: &OutcomeRecord) -> Result<f64> {
    let s = outcomes.parity(&step.s_domain)?;
    let t = outcomes.parity(&step.t_domain)?;
    let signed = if s == 1 {
        -step.base_angle
    } else {
        step.base_angle
    };
    Ok(signed + f64::from(t) * PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrameEntry {
    pub qubit: usize,
    pub x: bool,
    pub z: bool,
}

/// Byproduct bits, two per output qubit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PauliFrame {
    pub entries: Vec<FrameEntry>,
}

impl PauliFrame {
    pub fn compute(pattern: &MeasurementPattern, outcomes: &OutcomeRecord) -> Result<Self> {
        let empty = BTreeSet::new();
        let entries = pattern
            .outputs
            .iter()
            .map(|&q| {
                let x = outcomes.parity(pattern.x_corrections.get(&q).unwrap_or(&empty))?;
                let z = outcomes.parity(pattern.z_corrections.get(&q).unwrap_or(&empty))?;
                Ok(FrameEntry {
                    qubit: q,
                    x: x == 1,
                    z: z == 1,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { entries })
    }

    pub fn num_bits(&self) -> usize {
        2 * self.entries.len()
    }

    /// Pauli over the frame's qubits, in frame order.
    pub fn to_pauli(&self) -> PauliOperator {
        PauliOperator::new(
            self.entries.iter().map(|e| e.x).collect(),
            self.entries.iter().map(|e| e.z).collect(),
        )
        .expect("equal lengths")
    }

    /// Frame on a subset of its qubits, in ascending order.
    pub fn restrict(&self, qubits: &[usize]) -> Result<Self> {
        let mut qubits = qubits.to_vec();
        qubits.sort_unstable();
        let entries = qubits
            .iter()
            .map(|q| {
                self.entries
                    .iter()
                    .find(|e| e.qubit == *q)
                    .copied()
                    .ok_or_else(|| Error::validation(format!("qubit {q} is not in the frame")))
            })
            .collect::<Result<_>>()?;
        Ok(Self { entries })
    }
}

/// Byproduct Pauli on the outputs (bit `k` ↔ `outputs[k]`).
pub fn byproduct_of(
    pattern: &MeasurementPattern,
    outcomes: &OutcomeRecord,
) -> Result<PauliOperator> {
    if let Some(q) = pattern
        .measured()
        .find(|q| !outcomes.outcomes.contains_key(q))
    {
        return Err(Error::validation(format!(
            "outcome record is missing measured qubit {q}"
        )));
    }
    Ok(PauliFrame::compute(pattern, outcomes)?.to_pauli())
}
