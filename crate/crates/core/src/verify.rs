//! Numerical checks on trajectory ensembles.
//!
//! * No-signaling: the trailing region's mixed state is the same for any two
//!   choices of angles on the leading columns.
//! * Decomposition: every post-measurement trailing state equals the logical
//!   register (byproduct applied) joined to a fresh cluster by border CZs.
//! * One-time pad: the byproduct keys scramble any register state to the
//!   maximally mixed state, which needs at least `2n` bits of key entropy.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engine::{enumerate_trajectories, LatticeProgram, MeasurementPattern};
use crate::error::{Error, Result};
use crate::graph::{build_cluster, encode_input, region, ClusterLayout, Region, RegionKind};
use crate::qsim::{
    fidelity_pure, shannon_entropy, trace_distance, DensityMatrix, LogBase, PauliOperator,
    ProbabilityDistribution, StateVector, MAX_DENSITY_QUBITS,
};

pub const SCHEMA: &str = "verify/1";
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Absolute slack on the `H ≥ 2n` comparison, in bits.
pub const ENTROPY_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_OTP_SAMPLES: usize = 32;
pub const MAX_OTP_QUBITS: usize = 6;

fn check_tolerance(tolerance: f64) -> Result<()> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::validation(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    Ok(())
}

/// `Σ_j p_j Tr_rest |ψ_j><ψ_j|` over the trajectories of `prefix`, restricted
/// to `bob_region` (which must lie inside the prefix outputs).
pub fn bob_marginal(
    resource: &StateVector,
    prefix: &MeasurementPattern,
    bob_region: &Region,
) -> Result<DensityMatrix> {
    if bob_region.qubits.len() > MAX_DENSITY_QUBITS {
        return Err(Error::Capacity {
            what: "trailing region size",
            got: bob_region.qubits.len(),
            limit: MAX_DENSITY_QUBITS,
        });
    }
    enumerate_trajectories(resource, prefix)?.mixed_marginal(&bob_region.qubits)
}

#[derive(Debug, Clone, Serialize)]
pub struct NoSignalingReport {
    pub schema: &'static str,
    pub check: &'static str,
    pub rows: usize,
    pub cols: usize,
    pub r: usize,
    pub strategy_a: Vec<f64>,
    pub strategy_b: Vec<f64>,
    pub bob_region: Region,
    pub distance: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Compares the trailing-region states produced by two angle assignments on
/// the first `r` columns. Both strategies run with the adaptive dependencies
/// of the layer program.
pub fn check_no_signaling(
    layout: &ClusterLayout,
    input: &StateVector,
    strategy_a: &[f64],
    strategy_b: &[f64],
    r: usize,
    tolerance: f64,
) -> Result<NoSignalingReport> {
    check_tolerance(tolerance)?;
    let bob = region(layout, RegionKind::Trailing, r)?;
    let expected = r * layout.rows();
    for (name, s) in [("strategy_a", strategy_a), ("strategy_b", strategy_b)] {
        if s.len() != expected {
            return Err(Error::validation(format!(
                "{name} has {} angles, the leading region C_{r} has {expected} qubits",
                s.len()
            )));
        }
    }
    let resource = encode_input(input, layout)?;
    let marginal = |angles: &[f64]| -> Result<DensityMatrix> {
        let prefix = LatticeProgram::new(layout.clone(), angles.to_vec())?.compile()?;
        bob_marginal(&resource, &prefix, &bob)
    };
    let distance = trace_distance(&marginal(strategy_a)?, &marginal(strategy_b)?)?;
    Ok(NoSignalingReport {
        schema: SCHEMA,
        check: "no_signaling",
        rows: layout.rows(),
        cols: layout.cols(),
        r,
        strategy_a: strategy_a.to_vec(),
        strategy_b: strategy_b.to_vec(),
        bob_region: bob,
        distance,
        tolerance,
        pass: distance <= tolerance,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OutcomeFidelity {
    pub outcomes: String,
    pub probability: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub schema: &'static str,
    pub check: &'static str,
    pub rows: usize,
    pub cols: usize,
    pub r: usize,
    pub fidelities: Vec<OutcomeFidelity>,
    pub min_fidelity: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// For every outcome of the first `r` columns, rebuilds the trailing state as
/// `CZ_border · (P_j U|input> ⊗ cluster(columns r+1..))` and compares it with
/// the simulated post-measurement state.
///
/// `U` is the gate-level circuit of the program (including the vertical CZs
/// of column `r`), `P_j` the byproduct on column `r`, and the border CZs are
/// the wire edges between columns `r` and `r + 1`.
pub fn check_decomposition(
    program: &LatticeProgram,
    input: &StateVector,
    r: usize,
    tolerance: f64,
) -> Result<DecompositionReport> {
    check_tolerance(tolerance)?;
    let layout = program.layout();
    let rows = layout.rows();
    region(layout, RegionKind::Trailing, r)?;
    let prefix = program.prefix(r)?;
    let resource = encode_input(input, layout)?;
    let ensemble = enumerate_trajectories(&resource, &prefix)?;

    let register = program.logical_circuit(input, r)?;
    let residual = if r + 1 < layout.cols() {
        Some(build_cluster(&layout.trailing(r + 1)?)?)
    } else {
        None
    };
    let column = layout.column(r);

    let mut fidelities = Vec::with_capacity(ensemble.len());
    for t in &ensemble.trajectories {
        let mut reconstructed = register.clone();
        reconstructed.apply_pauli(&t.frame.restrict(&column)?.to_pauli())?;
        if let Some(eta) = &residual {
            reconstructed = reconstructed.tensor(eta)?;
            for row in 0..rows {
                reconstructed.apply_cz(row, rows + row)?;
            }
        }
        fidelities.push(OutcomeFidelity {
            outcomes: t.record.bitstring(),
            probability: t.record.probability,
            fidelity: fidelity_pure(&t.state, &reconstructed)?,
        });
    }
    let min_fidelity = fidelities
        .iter()
        .map(|f| f.fidelity)
        .fold(f64::INFINITY, f64::min);
    Ok(DecompositionReport {
        schema: SCHEMA,
        check: "decomposition",
        rows,
        cols: layout.cols(),
        r,
        fidelities,
        min_fidelity,
        tolerance,
        pass: min_fidelity >= 1.0 - tolerance,
    })
}

/// One key of a Pauli one-time pad.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KeyedPauli {
    pub probability: f64,
    pub pauli: PauliOperator,
}

#[derive(Debug, Clone, Serialize)]
pub struct OtpReport {
    pub schema: &'static str,
    pub check: &'static str,
    pub n_logical: usize,
    pub num_keys: usize,
    pub entropy_bits: f64,
    pub entropy_bound_bits: f64,
    pub max_deviation: f64,
    pub sample_count: usize,
    /// Seed of the random test states.
    #[serde(rename = "sample_seed")]
    pub seed: u64,
    pub tolerance: f64,
    pub entropy_tolerance: f64,
    pub encryption_pass: bool,
    pub entropy_bound_pass: bool,
}

impl OtpReport {
    pub fn pass(&self) -> bool {
        self.encryption_pass && self.entropy_bound_pass
    }
}

/// Applies `ξ ↦ Σ_j p_j P_j ξ P_j†` to `sample_count` Haar-random pure states
/// and reports the largest trace distance to `I / 2^n`.
pub fn check_one_time_pad(
    keys: &[KeyedPauli],
    sample_count: usize,
    seed: u64,
    tolerance: f64,
) -> Result<OtpReport> {
    check_tolerance(tolerance)?;
    let n = keys
        .first()
        .ok_or_else(|| Error::validation("one-time pad needs at least one key"))?
        .pauli
        .num_qubits();
    if keys.iter().any(|k| k.pauli.num_qubits() != n) {
        return Err(Error::validation("keys act on different qubit counts"));
    }
    if n == 0 {
        return Err(Error::validation("keys act on zero qubits"));
    }
    if n > MAX_OTP_QUBITS {
        return Err(Error::Capacity {
            what: "one-time-pad register size",
            got: n,
            limit: MAX_OTP_QUBITS,
        });
    }
    if sample_count == 0 {
        return Err(Error::validation("sample_count must be positive"));
    }
    let dist = ProbabilityDistribution::new(keys.iter().map(|k| k.probability).collect())?;
    let entropy_bits = shannon_entropy(&dist, LogBase::Two);

    let mixed = DensityMatrix::maximally_mixed(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_deviation = 0.0f64;
    for _ in 0..sample_count {
        let xi = DensityMatrix::from_pure(&StateVector::random(n, &mut rng)?)?;
        let mut out = DensityMatrix::zeros(n)?;
        for k in keys {
            out.accumulate(k.probability, &xi.conjugate_by_pauli(&k.pauli)?)?;
        }
        max_deviation = max_deviation.max(trace_distance(&out, &mixed)?);
    }
    let bound = 2.0 * n as f64;
    Ok(OtpReport {
        schema: SCHEMA,
        check: "one_time_pad",
        n_logical: n,
        num_keys: keys.len(),
        entropy_bits,
        entropy_bound_bits: bound,
        max_deviation,
        sample_count,
        seed,
        tolerance,
        entropy_tolerance: ENTROPY_TOLERANCE,
        encryption_pass: max_deviation <= tolerance,
        entropy_bound_pass: entropy_bits >= bound - ENTROPY_TOLERANCE,
    })
}

/// Keys `(p_j, B_j)` of the first `r` columns of a layer program: one per
/// trajectory, with the byproduct restricted to the register column `r`.
/// The resource uses `|+>` inputs.
pub fn otp_from_mbqc(program: &LatticeProgram, r: usize) -> Result<Vec<KeyedPauli>> {
    let layout = program.layout();
    if r == 0 {
        return Err(Error::validation(
            "one-time pad needs at least one measured column",
        ));
    }
    region(layout, RegionKind::Trailing, r)?;
    let prefix = program.prefix(r)?;
    let resource = build_cluster(layout)?;
    let ensemble = enumerate_trajectories(&resource, &prefix)?;
    let column = layout.column(r);
    ensemble
        .trajectories
        .iter()
        .map(|t| {
            Ok(KeyedPauli {
                probability: t.record.probability,
                pauli: t.frame.restrict(&column)?.to_pauli(),
            })
        })
        .collect()
}
