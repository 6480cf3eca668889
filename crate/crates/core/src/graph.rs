//! Cluster and graph resource states on the `rows x cols` lattice.
//!
//! Qubits are indexed column-major, `col * rows + row`, so every column
//! (layer) is a contiguous index range.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::{StateVector, MAX_STATE_QUBITS};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterLayout {
    rows: usize,
    cols: usize,
    /// Sorted, deduplicated, each pair stored as `(low, high)`.
    edges: Vec<(usize, usize)>,
}

impl ClusterLayout {
    /// Nearest-neighbour square lattice.
    pub fn lattice(rows: usize, cols: usize) -> Result<Self> {
        if cols < 2 {
            return Err(Error::validation(format!(
                "a lattice needs at least two columns, got {cols}"
            )));
        }
        let edges = lattice_edges(rows.max(1), cols);
        Self::with_edges(rows, cols, edges)
    }

    /// Arbitrary graph on the `rows x cols` sites.
    pub fn with_edges(
        rows: usize,
        cols: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::validation(format!(
                "layout needs at least one row and column, got {rows}x{cols}"
            )));
        }
        let n = rows * cols;
        if n > MAX_STATE_QUBITS {
            return Err(Error::Capacity {
                what: "layout qubit count",
                got: n,
                limit: MAX_STATE_QUBITS,
            });
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::validation(format!("self-loop on qubit {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::index(format!(
                    "edge ({a}, {b}) references a qubit outside 0..{n}"
                )));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::validation(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(Self {
            rows,
            cols,
            edges: set.into_iter().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_qubits(&self) -> usize {
        self.rows * self.cols
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn qubit(&self, row: usize, col: usize) -> usize {
        col * self.rows + row
    }

    /// `(row, col)` of a qubit.
    pub fn coords(&self, q: usize) -> (usize, usize) {
        (q % self.rows, q / self.rows)
    }

    pub fn column(&self, col: usize) -> Vec<usize> {
        (0..self.rows).map(|row| self.qubit(row, col)).collect()
    }

    pub fn neighbors(&self, q: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == q, b == q) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    /// Vertical edges inside column `col`.
    pub fn vertical_edges(&self, col: usize) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .filter(|&(a, b)| self.coords(a).1 == col && self.coords(b).1 == col)
            .collect()
    }

    /// True when every edge joins lattice nearest neighbours and every
    /// horizontal (wire) edge is present: the shape the layer-by-layer
    /// teleportation analysis needs. Vertical edges may be omitted.
    pub fn is_layer_structured(&self) -> bool {
        if self.cols < 2 {
            return false;
        }
        let nearest = self.edges.iter().all(|&(a, b)| {
            let (ra, ca) = self.coords(a);
            let (rb, cb) = self.coords(b);
            (ra == rb && ca.abs_diff(cb) == 1) || (ca == cb && ra.abs_diff(rb) == 1)
        });
        let wires = (0..self.rows).all(|row| {
            (0..self.cols - 1).all(|col| {
                self.edges
                    .binary_search(&(self.qubit(row, col), self.qubit(row, col + 1)))
                    .is_ok()
            })
        });
        nearest && wires
    }

    /// Sub-layout made of columns `from..cols`, re-indexed from zero, keeping
    /// only edges with both ends inside.
    pub fn trailing(&self, from: usize) -> Result<ClusterLayout> {
        let offset = from * self.rows;
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, _)| a >= offset)
            .map(|&(a, b)| (a - offset, b - offset));
        ClusterLayout::with_edges(self.rows, self.cols - from, edges)
    }
}

pub(crate) fn lattice_edges(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let q = |row: usize, col: usize| col * rows + row;
    let mut edges = Vec::new();
    for col in 0..cols {
        for row in 0..rows {
            if col + 1 < cols {
                edges.push((q(row, col), q(row, col + 1)));
            }
            if row + 1 < rows {
                edges.push((q(row, col), q(row + 1, col)));
            }
        }
    }
    edges
}

/// Which side of the cut after column `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    /// The first `r` columns, measured by the computing party.
    Leading,
    /// The last `m − r` columns.
    Trailing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub kind: RegionKind,
    pub r: usize,
    pub qubits: Vec<usize>,
}

/// Leading (`C_r`) or trailing (`O_r`) region after `r` columns.
pub fn region(layout: &ClusterLayout, kind: RegionKind, r: usize) -> Result<Region> {
    if r == 0 || r >= layout.cols {
        return Err(Error::validation(format!(
            "cut index r = {r} outside 1..={}",
            layout.cols.saturating_sub(1)
        )));
    }
    let split = r * layout.rows;
    let qubits = match kind {
        RegionKind::Leading => (0..split).collect(),
        RegionKind::Trailing => (split..layout.num_qubits()).collect(),
    };
    Ok(Region { kind, r, qubits })
}

/// `|+>` on every site, then CZ on every edge.
pub fn build_cluster(layout: &ClusterLayout) -> Result<StateVector> {
    let mut state = StateVector::plus_state(layout.num_qubits())?;
    entangle(&mut state, layout)?;
    Ok(state)
}

/// `input` on column 0, `|+>` elsewhere, then CZ on every edge.
pub fn encode_input(input: &StateVector, layout: &ClusterLayout) -> Result<StateVector> {
    if input.num_qubits() != layout.rows {
        return Err(Error::validation(format!(
            "input has {} qubits but the layout has {} rows",
            input.num_qubits(),
            layout.rows
        )));
    }
    let rest = layout.num_qubits() - layout.rows;
    let mut state = if rest == 0 {
        input.clone()
    } else {
        input.tensor(&StateVector::plus_state(rest)?)?
    };
    entangle(&mut state, layout)?;
    Ok(state)
}

fn entangle(state: &mut StateVector, layout: &ClusterLayout) -> Result<()> {
    for &(a, b) in &layout.edges {
        state.apply_cz(a, b)?;
    }
    Ok(())
}
