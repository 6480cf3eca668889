use nalgebra::DMatrix;
use num_complex::Complex64;

use super::pauli::PauliOperator;
use super::state::StateVector;
use super::C_ZERO;
use crate::error::{Error, Result};

/// Largest density matrix the simulator will allocate.
pub const MAX_DENSITY_QUBITS: usize = 12;

const HERMITIAN_TOLERANCE: f64 = 1e-12;
const TRACE_TOLERANCE: f64 = 1e-12;
const PSD_TOLERANCE: f64 = 1e-10;

/// Density matrix over `num_qubits` qubits, same bit convention as
/// [`StateVector`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    matrix: DMatrix<Complex64>,
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_DENSITY_QUBITS {
        return Err(Error::Capacity {
            what: "density-matrix qubit count",
            got: n,
            limit: MAX_DENSITY_QUBITS,
        });
    }
    Ok(())
}

impl DensityMatrix {
    pub fn from_pure(state: &StateVector) -> Result<Self> {
        check_capacity(state.num_qubits())?;
        let a = state.amplitudes();
        let dim = a.len();
        Ok(Self {
            num_qubits: state.num_qubits(),
            matrix: DMatrix::from_fn(dim, dim, |i, j| a[i] * a[j].conj()),
        })
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        check_capacity(n)?;
        let dim = 1usize << n;
        Ok(Self {
            num_qubits: n,
            matrix: DMatrix::from_diagonal_element(dim, dim, Complex64::new(1.0 / dim as f64, 0.0)),
        })
    }

    /// Validates Hermiticity, unit trace and positivity.
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = matrix.nrows();
        if dim != matrix.ncols() || dim == 0 || !dim.is_power_of_two() {
            return Err(Error::validation(format!(
                "density matrix must be square with power-of-two size, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let n = dim.trailing_zeros() as usize;
        check_capacity(n)?;
        let rho = Self {
            num_qubits: n,
            matrix,
        };
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn zeros(n: usize) -> Result<Self> {
        check_capacity(n)?;
        let dim = 1usize << n;
        Ok(Self {
            num_qubits: n,
            matrix: DMatrix::from_element(dim, dim, C_ZERO),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Checks the density-matrix invariants.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in i..dim {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        if worst > HERMITIAN_TOLERANCE {
            return Err(Error::validation(format!(
                "matrix is not Hermitian (deviation {worst:e})"
            )));
        }
        let tr = self.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOLERANCE {
            return Err(Error::validation(format!("trace is {tr}, expected 1")));
        }
        let min_eig = self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min_eig < -PSD_TOLERANCE {
            return Err(Error::validation(format!(
                "matrix has negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(())
    }

    /// Eigenvalues of the (Hermitian part of the) matrix, unsorted.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// `P ρ P†`.
    pub fn conjugate_by_pauli(&self, p: &PauliOperator) -> Result<Self> {
        if p.num_qubits() != self.num_qubits {
            return Err(Error::validation(format!(
                "Pauli on {} qubits applied to a {}-qubit density matrix",
                p.num_qubits(),
                self.num_qubits
            )));
        }
        let x = p.x_mask();
        let z = p.z_mask();
        let sign = |i: usize| {
            if (i & z).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            }
        };
        let dim = self.dim();
        let mut out = DMatrix::from_element(dim, dim, C_ZERO);
        for i in 0..dim {
            for k in 0..dim {
                out[(i ^ x, k ^ x)] = self.matrix[(i, k)] * (sign(i) * sign(k));
            }
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            matrix: out,
        })
    }

    /// `self += weight · other`.
    pub(crate) fn accumulate(&mut self, weight: f64, other: &DensityMatrix) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::validation(
                "mixing density matrices of different sizes",
            ));
        }
        self.matrix += &other.matrix * Complex64::new(weight, 0.0);
        Ok(())
    }

    /// `self += weight · |ψ><ψ|` without materializing the projector twice.
    pub(crate) fn accumulate_pure(&mut self, weight: f64, state: &StateVector) -> Result<()> {
        if self.num_qubits != state.num_qubits() {
            return Err(Error::validation("mixing a pure state of the wrong size"));
        }
        let a = state.amplitudes();
        for i in 0..a.len() {
            for j in 0..a.len() {
                self.matrix[(i, j)] += a[i] * a[j].conj() * weight;
            }
        }
        Ok(())
    }

    /// Reduced state on `keep` (ascending qubit order in the result).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = normalize_keep(keep, self.num_qubits)?;
        let layout = SplitLayout::new(&keep, self.num_qubits);
        let mut out = DensityMatrix::zeros(keep.len())?;
        for e in 0..layout.env_dim() {
            for a in 0..layout.keep_dim() {
                let ia = layout.join(a, e);
                for b in 0..layout.keep_dim() {
                    out.matrix[(a, b)] += self.matrix[(ia, layout.join(b, e))];
                }
            }
        }
        Ok(out)
    }
}

fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    herm.symmetric_eigenvalues().iter().copied().collect()
}

fn normalize_keep(keep: &[usize], n: usize) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::validation(
            "partial trace must keep at least one qubit",
        ));
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&q) = keep.iter().find(|&&q| q >= n) {
        return Err(Error::index(format!(
            "kept qubit {q} out of range for {n} qubits"
        )));
    }
    check_capacity(keep.len())?;
    Ok(keep)
}

/// Splits a full amplitude index into (kept bits, environment bits).
struct SplitLayout {
    keep: Vec<usize>,
    env: Vec<usize>,
}

impl SplitLayout {
    fn new(keep: &[usize], n: usize) -> Self {
        Self {
            keep: keep.to_vec(),
            env: (0..n).filter(|q| !keep.contains(q)).collect(),
        }
    }

    fn keep_dim(&self) -> usize {
        1 << self.keep.len()
    }

    fn env_dim(&self) -> usize {
        1 << self.env.len()
    }

    fn join(&self, kept: usize, env: usize) -> usize {
        scatter(kept, &self.keep) | scatter(env, &self.env)
    }
}

fn scatter(bits: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &q)| acc | ((bits >> k & 1) << q))
}

/// Reduced density matrix of a pure state on `keep` (ascending order).
pub fn partial_trace(state: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let keep = normalize_keep(keep, state.num_qubits())?;
    let layout = SplitLayout::new(&keep, state.num_qubits());
    let amps = state.amplitudes();
    let mut out = DensityMatrix::zeros(keep.len())?;
    let mut column = vec![C_ZERO; layout.keep_dim()];
    for e in 0..layout.env_dim() {
        let base = scatter(e, &layout.env);
        for (a, slot) in column.iter_mut().enumerate() {
            *slot = amps[base | scatter(a, &layout.keep)];
        }
        for a in 0..column.len() {
            if column[a] == C_ZERO {
                continue;
            }
            for b in 0..column.len() {
                out.matrix[(a, b)] += column[a] * column[b].conj();
            }
        }
    }
    Ok(out)
}

/// `½ Σ |λ_i(a − b)|`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::validation(format!(
            "trace distance between {}- and {}-qubit density matrices",
            a.num_qubits, b.num_qubits
        )));
    }
    let diff = &a.matrix - &b.matrix;
    Ok(0.5
        * hermitian_eigenvalues(&diff)
            .iter()
            .map(|l| l.abs())
            .sum::<f64>())
}
