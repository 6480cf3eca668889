//! JSON pattern file.
//!
//! ```json
//! {
//!   "layout": {"rows": 1, "cols": 3, "extra_edges": [], "omit_edges": []},
//!   "input": "plus",
//!   "steps": [{"qubit": 0, "angle": 0.0, "s_domain": [], "t_domain": []}],
//!   "outputs": [2],
//!   "x_corrections": {"2": [1]},
//!   "z_corrections": {"2": [0]}
//! }
//! ```
//!
//! `input` is either `"plus"` or `{"amplitudes": [[re, im], ...]}` over the
//! first column. Unknown fields are rejected.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::pattern::{MeasurementPattern, PatternStep};
use crate::error::{Error, Result};
use crate::graph::{encode_input, ClusterLayout};
use crate::qsim::StateVector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutSpec {
    pub rows: usize,
    pub cols: usize,
    #[serde(default)]
    pub extra_edges: Vec<[usize; 2]>,
    /// Default lattice edges to leave out.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub omit_edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedInput {
    Plus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplitudeInput {
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputSpec {
    Named(NamedInput),
    Amplitudes(AmplitudeInput),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepSpec {
    pub qubit: usize,
    pub angle: f64,
    #[serde(default)]
    pub s_domain: Vec<usize>,
    #[serde(default)]
    pub t_domain: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternFile {
    pub layout: LayoutSpec,
    pub input: InputSpec,
    pub steps: Vec<StepSpec>,
    pub outputs: Vec<usize>,
    #[serde(default)]
    pub x_corrections: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub z_corrections: BTreeMap<String, Vec<usize>>,
}

fn sort_pair([a, b]: [usize; 2]) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl PatternFile {
    /// Parses and validates the JSON text. Syntax errors carry line and
    /// column; semantic errors name the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: PatternFile = serde_json::from_str(text)
            .map_err(|e| Error::validation(format!("pattern file: {e}")))?;
        file.pattern()?;
        file.input_state()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pattern file serializes")
    }

    pub fn from_pattern(pattern: &MeasurementPattern, input: InputSpec) -> Self {
        let layout = pattern.layout();
        let default = default_edges(layout.rows(), layout.cols());
        let actual: BTreeSet<(usize, usize)> = layout.edges().iter().copied().collect();
        let corrections = |m: &BTreeMap<usize, BTreeSet<usize>>| {
            m.iter()
                .map(|(k, v)| (k.to_string(), v.iter().copied().collect()))
                .collect()
        };
        PatternFile {
            layout: LayoutSpec {
                rows: layout.rows(),
                cols: layout.cols(),
                extra_edges: actual.difference(&default).map(|&(a, b)| [a, b]).collect(),
                omit_edges: default.difference(&actual).map(|&(a, b)| [a, b]).collect(),
            },
            input,
            steps: pattern
                .steps()
                .iter()
                .map(|s| StepSpec {
                    qubit: s.qubit,
                    angle: s.base_angle,
                    s_domain: s.s_domain.iter().copied().collect(),
                    t_domain: s.t_domain.iter().copied().collect(),
                })
                .collect(),
            outputs: pattern.outputs().to_vec(),
            x_corrections: corrections(pattern.x_corrections()),
            z_corrections: corrections(pattern.z_corrections()),
        }
    }

    pub fn layout(&self) -> Result<ClusterLayout> {
        let spec = &self.layout;
        let mut edges = default_edges(spec.rows, spec.cols);
        for (i, &pair) in spec.omit_edges.iter().enumerate() {
            if !edges.remove(&sort_pair(pair)) {
                return Err(Error::validation(format!(
                    "layout.omit_edges[{i}]: ({}, {}) is not a lattice edge",
                    pair[0], pair[1]
                )));
            }
        }
        for (i, &pair) in spec.extra_edges.iter().enumerate() {
            if !edges.insert(sort_pair(pair)) {
                return Err(Error::validation(format!(
                    "layout.extra_edges[{i}]: ({}, {}) is already an edge",
                    pair[0], pair[1]
                )));
            }
        }
        ClusterLayout::with_edges(spec.rows, spec.cols, edges)
            .map_err(|e| Error::validation(format!("layout: {e}")))
    }

    pub fn pattern(&self) -> Result<MeasurementPattern> {
        let layout = self.layout()?;
        let steps = self
            .steps
            .iter()
            .map(|s| {
                PatternStep::with_domains(
                    s.qubit,
                    s.angle,
                    s.s_domain.iter().copied(),
                    s.t_domain.iter().copied(),
                )
            })
            .collect();
        let corrections = |name: &str, m: &BTreeMap<String, Vec<usize>>| {
            m.iter()
                .map(|(k, v)| {
                    let q = k.parse::<usize>().map_err(|_| {
                        Error::validation(format!("{name}: key {k:?} is not a qubit index"))
                    })?;
                    Ok((q, v.iter().copied().collect()))
                })
                .collect::<Result<BTreeMap<usize, BTreeSet<usize>>>>()
        };
        MeasurementPattern::new(
            layout,
            steps,
            self.outputs.clone(),
            corrections("x_corrections", &self.x_corrections)?,
            corrections("z_corrections", &self.z_corrections)?,
        )
    }

    /// Input state on the first column.
    pub fn input_state(&self) -> Result<StateVector> {
        match &self.input {
            InputSpec::Named(NamedInput::Plus) => StateVector::plus_state(self.layout.rows),
            InputSpec::Amplitudes(a) => {
                let state = StateVector::from_amplitudes(
                    a.amplitudes
                        .iter()
                        .map(|&[re, im]| Complex64::new(re, im))
                        .collect(),
                )
                .map_err(|e| Error::validation(format!("input.amplitudes: {e}")))?;
                if state.num_qubits() != self.layout.rows {
                    return Err(Error::validation(format!(
                        "input.amplitudes: {} amplitudes for {} rows",
                        a.amplitudes.len(),
                        self.layout.rows
                    )));
                }
                Ok(state)
            }
        }
    }

    /// Resource state: input on column 0, `|+>` elsewhere, CZ on every edge.
    pub fn resource(&self) -> Result<StateVector> {
        encode_input(&self.input_state()?, &self.layout()?)
    }
}

fn default_edges(rows: usize, cols: usize) -> BTreeSet<(usize, usize)> {
    crate::graph::lattice_edges(rows, cols)
        .into_iter()
        .collect()
}
