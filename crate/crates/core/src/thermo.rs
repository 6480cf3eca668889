//! Classical-memory accounting: Landauer erasure heat, the two-layer memory
//! policy of cluster MBQC, and the Sagawa–Ueda erasure-work bound.
//!
//! Entropies are kept in bits for the one-time-pad floor and in nats for the
//! free-energy bound; every conversion goes through `LN_2` explicitly.

use std::f64::consts::LN_2;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::engine::{MeasurementPattern, TrajectoryEnsemble};
use crate::error::{Error, Result};
use crate::qsim::{shannon_entropy, LogBase, ProbabilityDistribution};

pub const SCHEMA: &str = "thermo/1";
pub const BOLTZMANN_K: f64 = 1.380649e-23;
pub const DEFAULT_TEMPERATURE: f64 = 300.0;
/// Relative slack on the heat-versus-floor comparison.
pub const FLOOR_RELATIVE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub boltzmann_k: f64,
    /// `k = 1` and the temperature is dimensionless.
    pub natural_units: bool,
}

impl PhysicalConstants {
    pub fn si() -> Self {
        Self {
            boltzmann_k: BOLTZMANN_K,
            natural_units: false,
        }
    }

    pub fn natural() -> Self {
        Self {
            boltzmann_k: 1.0,
            natural_units: true,
        }
    }

    pub fn with_boltzmann(boltzmann_k: f64) -> Result<Self> {
        if !(boltzmann_k > 0.0 && boltzmann_k.is_finite()) {
            return Err(Error::validation(format!(
                "boltzmann_k must be positive, got {boltzmann_k}"
            )));
        }
        Ok(Self {
            boltzmann_k,
            natural_units: false,
        })
    }

    /// `kT`, after checking `T > 0`.
    pub fn kt(&self, temperature: f64) -> Result<f64> {
        check_temperature(temperature)?;
        Ok(self.boltzmann_k * temperature)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::si()
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::validation(format!(
            "temperature must be positive, got {t}"
        )));
    }
    Ok(())
}

/// `bits · k · T · ln 2`.
pub fn landauer_heat(bits: f64, temperature: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(bits >= 0.0 && bits.is_finite()) {
        return Err(Error::validation(format!(
            "bit count must be non-negative, got {bits}"
        )));
    }
    Ok(bits * constants.kt(temperature)? * LN_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LedgerAction {
    Store,
    Erase,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerEvent {
    pub label: String,
    pub action: LedgerAction,
    pub bits: u64,
    /// Stored bits after the event.
    pub stored_after: u64,
}

/// Store/erase log of a classical memory. Storing is free; erasing `b` bits
/// costs `b · kT ln 2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThermoLedger {
    temperature: f64,
    constants: PhysicalConstants,
    stored_bits: u64,
    erased_bits_total: u64,
    peak_stored_bits: u64,
    events: Vec<LedgerEvent>,
}

impl ThermoLedger {
    pub fn new(temperature: f64, constants: PhysicalConstants) -> Result<Self> {
        check_temperature(temperature)?;
        Ok(Self {
            temperature,
            constants,
            stored_bits: 0,
            erased_bits_total: 0,
            peak_stored_bits: 0,
            events: Vec::new(),
        })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    pub fn stored_bits(&self) -> u64 {
        self.stored_bits
    }

    pub fn erased_bits_total(&self) -> u64 {
        self.erased_bits_total
    }

    pub fn peak_stored_bits(&self) -> u64 {
        self.peak_stored_bits
    }

    pub fn events(&self) -> &[LedgerEvent] {
        &self.events
    }

    /// Recomputed from the erased total, so the heat identity holds exactly.
    pub fn heat_joules(&self) -> f64 {
        self.erased_bits_total as f64 * self.constants.boltzmann_k * self.temperature * LN_2
    }

    pub fn store(&mut self, label: impl Into<String>, bits: u64) -> Result<()> {
        self.stored_bits = self
            .stored_bits
            .checked_add(bits)
            .ok_or_else(|| Error::validation("stored bit count overflows"))?;
        self.peak_stored_bits = self.peak_stored_bits.max(self.stored_bits);
        self.events.push(LedgerEvent {
            label: label.into(),
            action: LedgerAction::Store,
            bits,
            stored_after: self.stored_bits,
        });
        Ok(())
    }

    pub fn erase(&mut self, label: impl Into<String>, bits: u64) -> Result<()> {
        let label = label.into();
        if bits > self.stored_bits {
            return Err(Error::validation(format!(
                "{label}: cannot erase {bits} bits, only {} stored",
                self.stored_bits
            )));
        }
        self.stored_bits -= bits;
        self.erased_bits_total += bits;
        self.events.push(LedgerEvent {
            label,
            action: LedgerAction::Erase,
            bits,
            stored_after: self.stored_bits,
        });
        Ok(())
    }
}

/// Ledger of the two-layer policy plus the stored bits after each layer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MemoryTrace {
    pub register_qubits: usize,
    pub layers: usize,
    /// Stored bits once layer `t` (1-based, index `t − 1`) has been handled.
    pub stored_after_layer: Vec<u64>,
    pub final_erasure: bool,
    pub ledger: ThermoLedger,
}

impl MemoryTrace {
    /// Largest stored count over the layer snapshots.
    pub fn steady_stored_bits(&self) -> u64 {
        self.stored_after_layer.iter().copied().max().unwrap_or(0)
    }
}

/// Replays the cluster memory policy: after layer `t` is measured its `n`
/// outcome bits are stored and those of layer `t − 2` are erased, since
/// only the last two layers feed the adaptive angles and the byproduct.
/// With `erase_final`, whatever remains is erased at the end.
pub fn cluster_memory_trace(
    pattern: &MeasurementPattern,
    temperature: f64,
    constants: &PhysicalConstants,
    erase_final: bool,
) -> Result<MemoryTrace> {
    let layers = pattern.measured_layers().ok_or_else(|| {
        Error::validation("memory trace needs a pattern measuring whole leading columns in order")
    })?;
    let n = pattern.layout().rows();
    let bits = n as u64;
    let mut ledger = ThermoLedger::new(temperature, *constants)?;
    let mut stored_after_layer = Vec::with_capacity(layers);
    for t in 1..=layers {
        ledger.store(format!("layer {t}"), bits)?;
        if t >= 3 {
            ledger.erase(format!("layer {}", t - 2), bits)?;
        }
        stored_after_layer.push(ledger.stored_bits());
    }
    if erase_final {
        let remaining = ledger.stored_bits();
        if remaining > 0 {
            ledger.erase("final frame", remaining)?;
        }
    }
    Ok(MemoryTrace {
        register_qubits: n,
        layers,
        stored_after_layer,
        final_erasure: erase_final,
        ledger,
    })
}

/// `ln Σ exp(−E/kT)`, shifted by the lowest level.
pub fn log_partition_function(
    levels: &[f64],
    temperature: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let kt = constants.kt(temperature)?;
    if levels.is_empty() {
        return Err(Error::validation("memory state needs at least one level"));
    }
    if levels.iter().any(|e| !e.is_finite()) {
        return Err(Error::validation("energy levels must be finite"));
    }
    let e_min = levels.iter().copied().fold(f64::INFINITY, f64::min);
    let sum: f64 = levels.iter().map(|e| (-(e - e_min) / kt).exp()).sum();
    Ok(-e_min / kt + sum.ln())
}

/// `Σ exp(−E/kT)`.
pub fn partition_function(
    levels: &[f64],
    temperature: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    Ok(log_partition_function(levels, temperature, constants)?.exp())
}

/// Energy levels of the memory Hamiltonian for each result `j`. State 0 is
/// the standard (erased) state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MemoryModel {
    pub levels: Vec<Vec<f64>>,
    pub temperature: f64,
}

impl MemoryModel {
    pub fn new(levels: Vec<Vec<f64>>, temperature: f64) -> Result<Self> {
        check_temperature(temperature)?;
        if levels.is_empty() {
            return Err(Error::validation("memory model needs at least one state"));
        }
        for (j, l) in levels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::validation(format!("levels[{j}] is empty")));
            }
            if l.iter().any(|e| !e.is_finite()) {
                return Err(Error::validation(format!(
                    "levels[{j}] has a non-finite energy"
                )));
            }
        }
        Ok(Self {
            levels,
            temperature,
        })
    }

    /// `c` copies of the same level set.
    pub fn symmetric(c: usize, levels: Vec<f64>, temperature: f64) -> Result<Self> {
        Self::new(vec![levels; c], temperature)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SagawaUedaBound {
    pub delta_f: f64,
    pub min_work: f64,
    pub entropy_nats: f64,
}

/// `ΔF = kT ln Z_0 − Σ_j p_j kT ln Z_j` and `W_min = kT·H − ΔF` with `H` in
/// nats. The sum is evaluated as `Σ_j p_j kT (ln Z_0 − ln Z_j)`, which is the
/// same expression for a normalized `p` and vanishes exactly when every
/// `Z_j` equals `Z_0`.
pub fn sagawa_ueda_bound(
    model: &MemoryModel,
    p: &ProbabilityDistribution,
    constants: &PhysicalConstants,
) -> Result<SagawaUedaBound> {
    if model.levels.len() != p.len() {
        return Err(Error::validation(format!(
            "memory model has {} states, distribution has {} outcomes",
            model.levels.len(),
            p.len()
        )));
    }
    let kt = constants.kt(model.temperature)?;
    let ln_z = model
        .levels
        .iter()
        .map(|l| log_partition_function(l, model.temperature, constants))
        .collect::<Result<Vec<f64>>>()?;
    let delta_f: f64 = p
        .probabilities()
        .iter()
        .zip(&ln_z)
        .map(|(pj, lz)| pj * kt * (ln_z[0] - lz))
        .sum();
    let entropy_nats = shannon_entropy(p, LogBase::E);
    Ok(SagawaUedaBound {
        delta_f,
        min_work: kt * entropy_nats - delta_f,
        entropy_nats,
    })
}

/// Heat accounting for one ensemble. In natural units the heat fields are
/// serialized as multiples of `ln 2` (`*_ln2`) instead of joules (`*_J`).
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoReport {
    pub constants: PhysicalConstants,
    pub temperature: f64,
    pub register_qubits: usize,
    pub resource_qubits: usize,
    pub measured_qubits: usize,
    pub layers: usize,
    pub entropy_bits: f64,
    pub entropy_nats: f64,
    pub pad_floor_bits: f64,
    pub erased_bits: u64,
    pub steady_stored_bits: u64,
    pub final_erasure: bool,
    /// Cluster-policy heat.
    pub heat: f64,
    /// `2n · kT ln 2`.
    pub floor_heat: f64,
    /// `H · kT ln 2`.
    pub landauer_floor_heat: f64,
    pub per_register_qubit_bits: f64,
    pub per_register_qubit_heat: f64,
    pub per_resource_qubit_heat: f64,
    pub pass: bool,
}

/// Entropy of the outcome record, both floors, and the heat of erasing the
/// record under the two-layer policy.
pub fn mbqc_heat_report(
    ensemble: &TrajectoryEnsemble,
    temperature: f64,
    constants: &PhysicalConstants,
    erase_final: bool,
) -> Result<ThermoReport> {
    let pattern = &ensemble.pattern;
    let trace = cluster_memory_trace(pattern, temperature, constants, erase_final)?;
    let dist = ensemble.distribution()?;
    let entropy_bits = shannon_entropy(&dist, LogBase::Two);
    let entropy_nats = shannon_entropy(&dist, LogBase::E);
    let n = trace.register_qubits;
    let pad_floor_bits = 2.0 * n as f64;
    let heat = trace.ledger.heat_joules();
    let floor_heat = landauer_heat(pad_floor_bits, temperature, constants)?;
    let landauer_floor_heat = landauer_heat(entropy_bits, temperature, constants)?;
    let floor = floor_heat.max(landauer_floor_heat);
    let resource_qubits = pattern.layout().num_qubits();
    Ok(ThermoReport {
        constants: *constants,
        temperature,
        register_qubits: n,
        resource_qubits,
        measured_qubits: pattern.num_measured(),
        layers: trace.layers,
        entropy_bits,
        entropy_nats,
        pad_floor_bits,
        erased_bits: trace.ledger.erased_bits_total(),
        steady_stored_bits: trace.steady_stored_bits(),
        final_erasure: erase_final,
        heat,
        floor_heat,
        landauer_floor_heat,
        per_register_qubit_bits: trace.steady_stored_bits() as f64 / n as f64,
        per_register_qubit_heat: heat / n as f64,
        per_resource_qubit_heat: heat / resource_qubits as f64,
        pass: heat >= floor * (1.0 - FLOOR_RELATIVE_TOLERANCE),
    })
}

impl Serialize for ThermoReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let natural = self.constants.natural_units;
        // natural units: k = 1, so heat / ln 2 is the multiple of ln 2
        let h = |x: f64| if natural { x / LN_2 } else { x };
        let mut s = serializer.serialize_struct("ThermoReport", 22)?;
        s.serialize_field("schema", SCHEMA)?;
        s.serialize_field("natural_units", &natural)?;
        s.serialize_field("boltzmann_k", &self.constants.boltzmann_k)?;
        s.serialize_field("temperature_K", &self.temperature)?;
        s.serialize_field("register_qubits", &self.register_qubits)?;
        s.serialize_field("resource_qubits", &self.resource_qubits)?;
        s.serialize_field("measured_qubits", &self.measured_qubits)?;
        s.serialize_field("layers", &self.layers)?;
        s.serialize_field("entropy_bits", &self.entropy_bits)?;
        s.serialize_field("entropy_nats", &self.entropy_nats)?;
        s.serialize_field("eq3_floor_bits", &self.pad_floor_bits)?;
        s.serialize_field("erased_bits", &self.erased_bits)?;
        s.serialize_field("steady_stored_bits", &self.steady_stored_bits)?;
        s.serialize_field("final_erasure", &self.final_erasure)?;
        if natural {
            s.serialize_field("heat_ln2", &h(self.heat))?;
            s.serialize_field("floor_heat_ln2", &h(self.floor_heat))?;
            s.serialize_field("landauer_floor_heat_ln2", &h(self.landauer_floor_heat))?;
            s.serialize_field(
                "per_register_qubit_heat_ln2",
                &h(self.per_register_qubit_heat),
            )?;
            s.serialize_field(
                "per_resource_qubit_heat_ln2",
                &h(self.per_resource_qubit_heat),
            )?;
        } else {
            s.serialize_field("heat_J", &self.heat)?;
            s.serialize_field("floor_heat_J", &self.floor_heat)?;
            s.serialize_field("landauer_floor_heat_J", &self.landauer_floor_heat)?;
            s.serialize_field("per_register_qubit_heat_J", &self.per_register_qubit_heat)?;
            s.serialize_field("per_resource_qubit_heat_J", &self.per_resource_qubit_heat)?;
        }
        s.serialize_field("per_register_qubit_bits", &self.per_register_qubit_bits)?;
        s.serialize_field("floor_relative_tolerance", &FLOOR_RELATIVE_TOLERANCE)?;
        s.serialize_field("pass", &self.pass)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{enumerate_trajectories, Builtin, LatticeProgram};
    use crate::graph::{build_cluster, ClusterLayout};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn lattice_pattern(rows: usize, cols: usize, layers: usize) -> MeasurementPattern {
        let layout = ClusterLayout::lattice(rows, cols).unwrap();
        LatticeProgram::new(layout, vec![0.0; rows * layers])
            .unwrap()
            .compile()
            .unwrap()
    }

    #[test]
    fn landauer_examples() {
        let si = PhysicalConstants::si();
        assert_eq!(landauer_heat(0.0, 300.0, &si).unwrap(), 0.0);
        let q = landauer_heat(1.0, 300.0, &si).unwrap();
        assert!((q - 2.8710e-21).abs() < 1e-24, "{q}");
        assert!((q - 1.380649e-23 * 300.0 * LN_2).abs() < 1e-27);
        let nat = landauer_heat(6.0, 1.0, &PhysicalConstants::natural()).unwrap();
        assert!((nat - 4.1588830833596715).abs() < 1e-12);
        assert!(landauer_heat(-1.0, 300.0, &si).is_err());
        assert!(landauer_heat(1.0, 0.0, &si).is_err());
        assert!(PhysicalConstants::with_boltzmann(0.0).is_err());
    }

    #[test]
    fn ledger_examples() {
        let si = PhysicalConstants::si();
        let mut l = ThermoLedger::new(300.0, si).unwrap();
        l.store("a", 2).unwrap();
        l.erase("a", 2).unwrap();
        assert_eq!(l.stored_bits(), 0);
        assert_relative_eq!(
            l.heat_joules(),
            2.0 * BOLTZMANN_K * 300.0 * LN_2,
            max_relative = 1e-15
        );
        let before = l.heat_joules();
        l.erase("nothing", 0).unwrap();
        assert_eq!(l.heat_joules(), before);
        l.store("b", 2).unwrap();
        assert!(matches!(l.erase("b", 3), Err(Error::Validation(_))));
        assert_eq!(l.events().len(), 4);
        assert_eq!(l.events()[1].action, LedgerAction::Erase);
    }

    #[test]
    fn memory_trace_examples() {
        let si = PhysicalConstants::si();
        let t = cluster_memory_trace(&lattice_pattern(2, 4, 3), 300.0, &si, true).unwrap();
        assert_eq!(t.steady_stored_bits(), 4);
        assert_eq!(t.stored_after_layer, vec![2, 4, 4]);
        assert_eq!(t.ledger.erased_bits_total(), 6);
        assert_relative_eq!(
            t.ledger.heat_joules(),
            landauer_heat(6.0, 300.0, &si).unwrap(),
            max_relative = 1e-12
        );

        let t = cluster_memory_trace(&lattice_pattern(1, 2, 1), 300.0, &si, true).unwrap();
        assert_eq!(t.ledger.erased_bits_total(), 1);
        let steady = cluster_memory_trace(&lattice_pattern(1, 5, 4), 300.0, &si, false).unwrap();
        assert_eq!(steady.ledger.erased_bits_total(), 2);
        assert_eq!(steady.ledger.stored_bits(), 2);
    }

    #[test]
    fn memory_trace_rejects_unordered_patterns() {
        use crate::engine::PatternStep;
        use std::collections::BTreeMap;
        let layout = ClusterLayout::lattice(1, 3).unwrap();
        let p = MeasurementPattern::new(
            layout,
            vec![PatternStep::new(1, 0.0)],
            vec![0, 2],
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap();
        assert!(cluster_memory_trace(&p, 300.0, &PhysicalConstants::si(), true).is_err());
    }

    #[test]
    fn partition_examples() {
        let nat = PhysicalConstants::natural();
        assert_eq!(partition_function(&[0.0], 1.0, &nat).unwrap(), 1.0);
        assert_eq!(partition_function(&[0.0, 0.0], 1.0, &nat).unwrap(), 2.0);
        let si = PhysicalConstants::si();
        let kt = BOLTZMANN_K * 300.0;
        assert_relative_eq!(
            partition_function(&[0.0, kt * LN_2], 300.0, &si).unwrap(),
            1.5,
            max_relative = 1e-14
        );
        assert!(partition_function(&[0.0], 0.0, &si).is_err());
        // log-sum-exp survives energies far above kT
        let lz = log_partition_function(&[1e4, 1e4], 1.0, &nat).unwrap();
        assert_relative_eq!(lz, -1e4 + LN_2, max_relative = 1e-14);
    }

    #[test]
    fn sagawa_ueda_examples() {
        let nat = PhysicalConstants::natural();
        let p = ProbabilityDistribution::new(vec![0.5, 0.5]).unwrap();
        let m = MemoryModel::new(vec![vec![0.0], vec![0.0, 0.0]], 1.0).unwrap();
        let b = sagawa_ueda_bound(&m, &p, &nat).unwrap();
        assert_relative_eq!(b.delta_f, -0.5 * LN_2, max_relative = 1e-14);
        assert_relative_eq!(b.min_work, 1.5 * LN_2, max_relative = 1e-14);

        let sym = MemoryModel::symmetric(4, vec![0.0, 0.3], 1.0).unwrap();
        let b =
            sagawa_ueda_bound(&sym, &ProbabilityDistribution::uniform(4).unwrap(), &nat).unwrap();
        assert_eq!(b.delta_f, 0.0);
        assert_relative_eq!(b.min_work, 2.0 * LN_2, max_relative = 1e-14);

        assert!(sagawa_ueda_bound(&sym, &p, &nat).is_err());
        assert!(MemoryModel::new(vec![vec![]], 1.0).is_err());
    }

    #[test]
    fn heat_reports() {
        let nat = PhysicalConstants::natural();
        let wire = Builtin::WireIdentity { cols: 3 }.pattern().unwrap();
        let e = enumerate_trajectories(&build_cluster(wire.layout()).unwrap(), &wire).unwrap();
        let r = mbqc_heat_report(&e, 1.0, &nat, true).unwrap();
        assert_relative_eq!(r.entropy_bits, 2.0, max_relative = 1e-12);
        assert_eq!(r.pad_floor_bits, 2.0);
        assert_relative_eq!(r.heat, r.floor_heat, max_relative = 1e-12);
        assert_eq!(r.per_register_qubit_bits, 2.0);
        assert!(r.pass);
        let json = serde_json::to_value(&r).unwrap();
        assert!(json.get("heat_ln2").is_some() && json.get("heat_J").is_none());
        assert_relative_eq!(
            json["heat_ln2"].as_f64().unwrap(),
            2.0,
            max_relative = 1e-12
        );

        let grid = lattice_pattern(2, 3, 2);
        let e = enumerate_trajectories(&build_cluster(grid.layout()).unwrap(), &grid).unwrap();
        let r = mbqc_heat_report(&e, DEFAULT_TEMPERATURE, &PhysicalConstants::si(), true).unwrap();
        assert_relative_eq!(r.entropy_bits, 4.0, max_relative = 1e-12);
        assert_eq!(r.pad_floor_bits, 4.0);
        assert!(r.pass);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["schema"], "thermo/1");
        assert!(json.get("heat_J").is_some());

        let open =
            mbqc_heat_report(&e, DEFAULT_TEMPERATURE, &PhysicalConstants::si(), false).unwrap();
        assert!(!open.pass);
    }

    proptest! {
        #[test]
        fn symmetric_memory_has_no_free_energy_change(
            weights in prop::collection::vec(0.01f64..1.0, 1..16),
            levels in prop::collection::vec(-2.0f64..2.0, 1..4),
        ) {
            let total: f64 = weights.iter().sum();
            let p = ProbabilityDistribution::new(weights.iter().map(|w| w / total).collect()).unwrap();
            let nat = PhysicalConstants::natural();
            let m = MemoryModel::symmetric(p.len(), levels, 1.0).unwrap();
            let b = sagawa_ueda_bound(&m, &p, &nat).unwrap();
            prop_assert_eq!(b.delta_f, 0.0);
            prop_assert!((b.min_work - b.entropy_nats).abs() <= 1e-12 * b.entropy_nats.max(1e-300));
        }

        #[test]
        fn uniform_maximizes_symmetric_work(
            weights in prop::collection::vec(0.0f64..1.0, 2..9),
        ) {
            let total: f64 = weights.iter().sum();
            prop_assume!(total > 0.0);
            let c = weights.len();
            let p = ProbabilityDistribution::new(weights.iter().map(|w| w / total).collect()).unwrap();
            let nat = PhysicalConstants::natural();
            let m = MemoryModel::symmetric(c, vec![0.0], 1.0).unwrap();
            let w = sagawa_ueda_bound(&m, &p, &nat).unwrap().min_work;
            let u = sagawa_ueda_bound(&m, &ProbabilityDistribution::uniform(c).unwrap(), &nat).unwrap().min_work;
            prop_assert!(w <= u + 1e-12);
        }

        #[test]
        fn ledger_heat_identity(ops in prop::collection::vec((any::<bool>(), 0u64..8), 0..40)) {
            let si = PhysicalConstants::si();
            let mut l = ThermoLedger::new(300.0, si).unwrap();
            let mut last = 0.0;
            for (store, bits) in ops {
                if store {
                    l.store("s", bits).unwrap();
                } else {
                    let b = bits.min(l.stored_bits());
                    l.erase("e", b).unwrap();
                }
                prop_assert!(l.heat_joules() >= last);
                last = l.heat_joules();
            }
            let ratio = l.heat_joules() / (BOLTZMANN_K * 300.0 * LN_2);
            prop_assert!((ratio - l.erased_bits_total() as f64).abs() <= 1e-12 * ratio.max(1.0));
        }
    }
}
