//! Column-by-column XY programs on layer-structured lattices.
//!
//! Measuring column `c` teleports every wire's logical qubit one column to
//! the right through `H · diag(1, e^{-iφ})`, after the vertical CZs of column
//! `c` have acted on the logical register. The byproduct frame is propagated
//! symbolically, as parity sets over measured qubits, which yields both the
//! adaptive `s_domain` of every step and the correction sets of the column
//! that holds the logical register afterwards.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::pattern::{MeasurementPattern, PatternStep};
use crate::error::{Error, Result};
use crate::graph::ClusterLayout;
use crate::qsim::{gates, StateVector};

/// Base XY angles for the leading columns of a layer-structured layout, one
/// angle per measured qubit in qubit-index order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeProgram {
    layout: ClusterLayout,
    angles: Vec<f64>,
}

/// Parity sets over measured qubits, as bit masks.
#[derive(Debug, Clone, Copy, Default)]
struct WireFrame {
    x: u64,
    z: u64,
}

fn mask_to_set(mask: u64) -> BTreeSet<usize> {
    (0..64).filter(|k| mask >> k & 1 == 1).collect()
}

impl LatticeProgram {
    pub fn new(layout: ClusterLayout, angles: Vec<f64>) -> Result<Self> {
        if !layout.is_layer_structured() {
            return Err(Error::Unsupported(
                "layer programs need a nearest-neighbour lattice with every wire edge present"
                    .into(),
            ));
        }
        let rows = layout.rows();
        if !angles.len().is_multiple_of(rows) || angles.len() / rows > layout.cols() - 1 {
            return Err(Error::validation(format!(
                "{} angles do not fill whole columns of a {}x{} lattice (last column is never measured)",
                angles.len(),
                rows,
                layout.cols()
            )));
        }
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::validation("angles must be finite"));
        }
        Ok(Self { layout, angles })
    }

    /// Reads the base angles of a pattern that measures whole leading columns.
    pub fn from_pattern(pattern: &MeasurementPattern) -> Result<Self> {
        let layers = pattern.measured_layers().ok_or_else(|| {
            Error::validation("pattern does not measure whole leading columns in column order")
        })?;
        let mut angles = vec![0.0; layers * pattern.layout().rows()];
        for step in pattern.steps() {
            angles[step.qubit] = step.base_angle;
        }
        Self::new(pattern.layout().clone(), angles)
    }

    pub fn layout(&self) -> &ClusterLayout {
        &self.layout
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Number of measured columns.
    pub fn layers(&self) -> usize {
        self.angles.len() / self.layout.rows()
    }

    /// Pattern measuring every programmed column.
    pub fn compile(&self) -> Result<MeasurementPattern> {
        self.prefix(self.layers())
    }

    /// Pattern measuring only the first `r` columns. The logical register
    /// then sits on column `r`, which carries the correction sets; the
    /// remaining outputs have none.
    pub fn prefix(&self, r: usize) -> Result<MeasurementPattern> {
        if r > self.layers() {
            return Err(Error::validation(format!(
                "prefix of {r} columns exceeds the {} programmed",
                self.layers()
            )));
        }
        let rows = self.layout.rows();
        let mut frames = vec![WireFrame::default(); rows];
        let mut steps = Vec::with_capacity(r * rows);
        for col in 0..r {
            self.entangle_frames(&mut frames, col);
            for (row, frame) in frames.iter_mut().enumerate() {
                let q = self.layout.qubit(row, col);
                steps.push(PatternStep {
                    qubit: q,
                    base_angle: self.angles[q],
                    s_domain: mask_to_set(frame.x),
                    t_domain: BTreeSet::new(),
                });
                *frame = WireFrame {
                    x: frame.z ^ (1 << q),
                    z: frame.x,
                };
            }
        }
        self.entangle_frames(&mut frames, r);

        let outputs: Vec<usize> = (r * rows..self.layout.num_qubits()).collect();
        let mut x_corrections = BTreeMap::new();
        let mut z_corrections = BTreeMap::new();
        for (row, frame) in frames.iter().enumerate() {
            let q = self.layout.qubit(row, r);
            if frame.x != 0 {
                x_corrections.insert(q, mask_to_set(frame.x));
            }
            if frame.z != 0 {
                z_corrections.insert(q, mask_to_set(frame.z));
            }
        }
        MeasurementPattern::new(
            self.layout.clone(),
            steps,
            outputs,
            x_corrections,
            z_corrections,
        )
    }

    /// Vertical CZs of `col` act on the logical register: `CZ X_a = X_a Z_b CZ`.
    fn entangle_frames(&self, frames: &mut [WireFrame], col: usize) {
        let before: Vec<WireFrame> = frames.to_vec();
        for (a, b) in self.layout.vertical_edges(col) {
            let (ra, rb) = (self.layout.coords(a).0, self.layout.coords(b).0);
            frames[ra].z ^= before[rb].x;
            frames[rb].z ^= before[ra].x;
        }
    }

    /// Gate-level register state after the first `r` columns, including the
    /// vertical CZs of column `r`: `U_r ⋯ U_1 |input>` on `rows` qubits.
    pub fn logical_circuit(&self, input: &StateVector, r: usize) -> Result<StateVector> {
        let rows = self.layout.rows();
        if input.num_qubits() != rows {
            return Err(Error::validation(format!(
                "input has {} qubits, register has {rows}",
                input.num_qubits()
            )));
        }
        if r > self.layers() {
            return Err(Error::validation(format!(
                "circuit depth {r} exceeds the {} programmed columns",
                self.layers()
            )));
        }
        let mut state = input.clone();
        for col in 0..r {
            self.register_cz(&mut state, col)?;
            for row in 0..rows {
                let angle = self.angles[self.layout.qubit(row, col)];
                state.apply_single_qubit_gate(row, &gates::teleport_step(angle))?;
            }
        }
        self.register_cz(&mut state, r)?;
        Ok(state)
    }

    fn register_cz(&self, state: &mut StateVector, col: usize) -> Result<()> {
        for (a, b) in self.layout.vertical_edges(col) {
            state.apply_cz(self.layout.coords(a).0, self.layout.coords(b).0)?;
        }
        Ok(())
    }
}
