use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::pauli::PauliOperator;
use super::{C_ONE, C_ZERO, UNITARY_TOLERANCE, ZERO_BRANCH_THRESHOLD};
use crate::error::{Error, Result};

/// Largest pure state the simulator will allocate.
pub const MAX_STATE_QUBITS: usize = 24;

pub type Matrix2 = [[Complex64; 2]; 2];

/// Dense pure state over `num_qubits` qubits.
///
/// Bit `k` of an amplitude index (least significant first) is the
/// computational-basis value of qubit `k`. A zero-qubit state is the scalar
/// left over once every qubit of a pattern has been measured.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// One outcome of an XY-plane measurement.
#[derive(Debug, Clone)]
pub struct Branch {
    pub outcome: u8,
    pub probability: f64,
    /// Normalized post-measurement state of the remaining qubits, `None` when
    /// the branch probability is below the zero-probability threshold.
    pub state: Option<StateVector>,
}

impl Branch {
    pub fn is_impossible(&self) -> bool {
        self.state.is_none()
    }
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_STATE_QUBITS {
        return Err(Error::Capacity {
            what: "pure-state qubit count",
            got: n,
            limit: MAX_STATE_QUBITS,
        });
    }
    Ok(())
}

impl StateVector {
    /// `|+>^n`.
    pub fn plus_state(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("plus state needs at least one qubit"));
        }
        check_capacity(n)?;
        let dim = 1usize << n;
        let amp = Complex64::new((dim as f64).recip().sqrt(), 0.0);
        Ok(Self {
            num_qubits: n,
            amplitudes: vec![amp; dim],
        })
    }

    /// `|0...0>`.
    pub fn zero_state(n: usize) -> Result<Self> {
        check_capacity(n)?;
        let mut amplitudes = vec![C_ZERO; 1 << n];
        amplitudes[0] = C_ONE;
        Ok(Self {
            num_qubits: n,
            amplitudes,
        })
    }

    /// Computational basis state `|index>`.
    pub fn basis_state(n: usize, index: usize) -> Result<Self> {
        check_capacity(n)?;
        if index >= 1 << n {
            return Err(Error::index(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amplitudes = vec![C_ZERO; 1 << n];
        amplitudes[index] = C_ONE;
        Ok(Self {
            num_qubits: n,
            amplitudes,
        })
    }

    /// Wraps explicit amplitudes. The length must be a power of two and the
    /// squared norm must be 1 within `1e-10`; the amplitudes are then
    /// renormalized to full precision.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::validation(format!(
                "amplitude count {len} is not a power of two"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_capacity(n)?;
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-10 {
            return Err(Error::validation(format!(
                "amplitudes have squared norm {norm_sqr}, expected 1"
            )));
        }
        let mut state = Self {
            num_qubits: n,
            amplitudes,
        };
        state.normalize();
        Ok(state)
    }

    /// Haar-random pure state.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_capacity(n)?;
        let mut amplitudes: Vec<Complex64> = (0..1usize << n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self {
            num_qubits: n,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn normalize(&mut self) {
        let norm = self.norm_sqr().sqrt();
        self.amplitudes.iter_mut().for_each(|a| *a /= norm);
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            return Err(Error::index(format!(
                "qubit {q} out of range for {} qubits",
                self.num_qubits
            )));
        }
        Ok(())
    }

    /// `self ⊗ other`, with `self` on the low qubit indices.
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let n = self.num_qubits + other.num_qubits;
        check_capacity(n)?;
        let low = self.dim();
        let mut amplitudes = vec![C_ZERO; low * other.dim()];
        for (hi, b) in other.amplitudes.iter().enumerate() {
            for (lo, a) in self.amplitudes.iter().enumerate() {
                amplitudes[hi * low + lo] = a * b;
            }
        }
        Ok(Self {
            num_qubits: n,
            amplitudes,
        })
    }

    /// Applies a 2x2 unitary to `qubit`. The matrix must be unitary within
    /// `1e-10`.
    pub fn apply_single_qubit_gate(&mut self, qubit: usize, u: &Matrix2) -> Result<()> {
        self.check_qubit(qubit)?;
        check_unitary(u)?;
        self.apply_matrix_unchecked(qubit, u);
        Ok(())
    }

    pub(crate) fn apply_matrix_unchecked(&mut self, qubit: usize, u: &Matrix2) {
        let bit = 1usize << qubit;
        for i in 0..self.amplitudes.len() {
            if i & bit != 0 {
                continue;
            }
            let a0 = self.amplitudes[i];
            let a1 = self.amplitudes[i | bit];
            self.amplitudes[i] = u[0][0] * a0 + u[0][1] * a1;
            self.amplitudes[i | bit] = u[1][0] * a0 + u[1][1] * a1;
        }
    }

    /// Controlled-Z between `q1` and `q2`.
    pub fn apply_cz(&mut self, q1: usize, q2: usize) -> Result<()> {
        self.check_qubit(q1)?;
        self.check_qubit(q2)?;
        if q1 == q2 {
            return Err(Error::index(format!(
                "CZ needs distinct qubits, got {q1} twice"
            )));
        }
        let mask = (1usize << q1) | (1usize << q2);
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if i & mask == mask {
                *a = -*a;
            }
        }
        Ok(())
    }

    /// Applies `X^x Z^z` on every qubit (Z first). Global phase is not tracked.
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        if p.num_qubits() != self.num_qubits {
            return Err(Error::validation(format!(
                "Pauli on {} qubits applied to a {}-qubit state",
                p.num_qubits(),
                self.num_qubits
            )));
        }
        let x = p.x_mask();
        let z = p.z_mask();
        let mut out = vec![C_ZERO; self.amplitudes.len()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let sign = if (i & z).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[i ^ x] = a * sign;
        }
        self.amplitudes = out;
        Ok(())
    }

    /// `<self| P |self>` for `P = X^x Z^z`.
    pub fn expectation(&self, p: &PauliOperator) -> Result<Complex64> {
        let mut applied = self.clone();
        applied.apply_pauli(p)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&applied.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `<other|self>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::validation(format!(
                "inner product of {}- and {}-qubit states",
                self.num_qubits, other.num_qubits
            )));
        }
        Ok(other
            .amplitudes
            .iter()
            .zip(&self.amplitudes)
            .map(|(b, a)| b.conj() * a)
            .sum())
    }

    /// Measures `qubit` in the XY-plane basis `|±φ> = (|0> ± e^{iφ}|1>)/√2`.
    ///
    /// Outcome 0 is the `+` projector. Both branches are returned, in outcome
    /// order; the measured qubit is removed from each collapsed state and the
    /// remaining qubits keep their relative order.
    pub fn measure_xy_branches(&self, qubit: usize, angle: f64) -> Result<[Branch; 2]> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let low_mask = bit - 1;
        let phase = Complex64::from_polar(1.0, -angle);
        let half = std::f64::consts::FRAC_1_SQRT_2;
        let rest = self.dim() / 2;
        let mut plus = Vec::with_capacity(rest);
        let mut minus = Vec::with_capacity(rest);
        for e in 0..rest {
            let i0 = ((e & !low_mask) << 1) | (e & low_mask);
            let a0 = self.amplitudes[i0];
            let a1 = self.amplitudes[i0 | bit] * phase;
            plus.push((a0 + a1) * half);
            minus.push((a0 - a1) * half);
        }
        let n = self.num_qubits - 1;
        let make = |outcome: u8, amplitudes: Vec<Complex64>| {
            let probability: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
            let state = (probability >= ZERO_BRANCH_THRESHOLD).then(|| {
                let mut s = StateVector {
                    num_qubits: n,
                    amplitudes,
                };
                s.normalize();
                s
            });
            Branch {
                outcome,
                probability,
                state,
            }
        };
        Ok([make(0, plus), make(1, minus)])
    }
}

/// `|<target|state>|^2`, insensitive to global phase.
pub fn fidelity_pure(state: &StateVector, target: &StateVector) -> Result<f64> {
    Ok(state.inner(target)?.norm_sqr().min(1.0))
}

pub(crate) fn check_unitary(u: &Matrix2) -> Result<()> {
    for i in 0..2 {
        for j in 0..2 {
            let dot: Complex64 = (0..2).map(|k| u[k][i].conj() * u[k][j]).sum();
            let expected = if i == j { C_ONE } else { C_ZERO };
            if (dot - expected).norm() > UNITARY_TOLERANCE {
                return Err(Error::validation(format!(
                    "gate is not unitary: (U†U)[{i}][{j}] = {dot}"
                )));
            }
        }
    }
    Ok(())
}
