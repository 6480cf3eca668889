use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Phase-free Pauli operator `⊗_k X^{x_k} Z^{z_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliOperator {
    num_qubits: usize,
    x_bits: Vec<bool>,
    z_bits: Vec<bool>,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            num_qubits: n,
            x_bits: vec![false; n],
            z_bits: vec![false; n],
        }
    }

    pub fn new(x_bits: Vec<bool>, z_bits: Vec<bool>) -> Result<Self> {
        if x_bits.len() != z_bits.len() {
            return Err(Error::validation(format!(
                "Pauli bit vectors differ in length ({} vs {})",
                x_bits.len(),
                z_bits.len()
            )));
        }
        Ok(Self {
            num_qubits: x_bits.len(),
            x_bits,
            z_bits,
        })
    }

    /// Builds from bit masks, bit `k` addressing qubit `k`.
    pub fn from_masks(n: usize, x: usize, z: usize) -> Self {
        Self {
            num_qubits: n,
            x_bits: (0..n).map(|k| x >> k & 1 == 1).collect(),
            z_bits: (0..n).map(|k| z >> k & 1 == 1).collect(),
        }
    }

    /// All `4^n` Paulis, ordered by `(z_mask << n) | x_mask`.
    pub fn all(n: usize) -> impl Iterator<Item = PauliOperator> {
        (0..1usize << (2 * n)).map(move |k| Self::from_masks(n, k & ((1 << n) - 1), k >> n))
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn x_bits(&self) -> &[bool] {
        &self.x_bits
    }

    pub fn z_bits(&self) -> &[bool] {
        &self.z_bits
    }

    pub fn x_mask(&self) -> usize {
        mask(&self.x_bits)
    }

    pub fn z_mask(&self) -> usize {
        mask(&self.z_bits)
    }

    pub fn is_identity(&self) -> bool {
        !self.x_bits.iter().chain(&self.z_bits).any(|&b| b)
    }

    /// Pauli label such as `"XIZ"`, qubit 0 first; `Y` stands for `XZ`.
    pub fn label(&self) -> String {
        self.x_bits
            .iter()
            .zip(&self.z_bits)
            .map(|(&x, &z)| match (x, z) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            })
            .collect()
    }
}

fn mask(bits: &[bool]) -> usize {
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0, |m, (k, _)| m | 1 << k)
}
