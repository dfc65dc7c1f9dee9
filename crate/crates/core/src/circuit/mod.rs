//! Benchmark circuit construction.
//!
//! For an ordered pair `(g_s, g_D)` every spectator line is
//!
//! ```text
//! prep -> barrier -> g_s^d_s -> delay(t) -> barrier -> unprep -> measure
//! ```
//!
//! and every driver line is `g_D^d_D` with no preparation and no measurement.
//! Because `order(g_s)` divides `d_s`, a noiseless spectator always returns
//! to |0>, so any `1` read out is an error. The delay pads each spectator
//! line to `duration(g_max) * d_D`, giving every circuit in a set the same
//! wall time.

pub mod depth;
pub mod metadata;
pub mod prep;
pub mod qasm;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::device::{DeviceTopology, GateSet, GateSpec};
use crate::placement::{assign_roles_with_rng, default_thresholds, PlacementError, Role, RoleAssignment, Thresholds};
use crate::rng::{derive_seed, pair_index, SeededRng};

pub use depth::{delay_time, driver_depth, spectator_depth, Delay, DepthError};
pub use metadata::{emit_metadata, read_set_dir, write_set_dir, CircuitMetadata, SetIoError, SetMetadata, METADATA_FILE};
pub use prep::{prep_sequence, unprep_sequence, PrepGate, PrepState};
pub use qasm::{emit_qasm, EmitError};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Depth(#[from] DepthError),
    #[error("placement failed for pair ({spectator}, {driver}): {source}")]
    Placement {
        spectator: String,
        driver: String,
        #[source]
        source: PlacementError,
    },
    #[error("metadata is inconsistent: {0}")]
    Metadata(String),
}

fn default_delta() -> f64 {
    0.1
}

fn default_shots() -> u64 {
    10_000
}

fn default_states() -> Vec<PrepState> {
    PrepState::ALL.to_vec()
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkConfig {
    /// Cumulative gate-error budget for the driver sequence.
    #[serde(default = "default_delta")]
    pub delta: f64,
    /// Shots the runner should take per circuit.
    #[serde(default = "default_shots")]
    pub shots: u64,
    #[serde(default = "default_states")]
    pub prep_states: Vec<PrepState>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_true")]
    pub fill_passes: bool,
    /// Group-count overrides; `None` falls back to the balanced default.
    #[serde(default)]
    pub driver_threshold: Option<usize>,
    #[serde(default)]
    pub spectator_threshold: Option<usize>,
    /// Defaults to `seed-<seed>`.
    #[serde(default)]
    pub set_id: Option<String>,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        Self {
            delta: default_delta(),
            shots: default_shots(),
            prep_states: default_states(),
            seed: 0,
            fill_passes: true,
            driver_threshold: None,
            spectator_threshold: None,
            set_id: None,
        }
    }
}

impl BenchmarkConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), BuildError> {
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(BuildError::Config(format!("delta must lie in (0, 1], got {}", self.delta)));
        }
        if self.shots == 0 {
            return Err(BuildError::Config("shots must be at least 1".into()));
        }
        if self.prep_states.is_empty() {
            return Err(BuildError::Config("at least one preparation state is required".into()));
        }
        Ok(())
    }

    pub fn set_id(&self) -> String {
        self.set_id.clone().unwrap_or_else(|| format!("seed-{}", self.seed))
    }

    fn thresholds_for(&self, topology: &DeviceTopology, spectator: &GateSpec, driver: &GateSpec) -> Thresholds {
        let d = default_thresholds(topology, spectator, driver);
        Thresholds::new(
            self.driver_threshold.unwrap_or(d.driver),
            self.spectator_threshold.unwrap_or(d.spectator),
        )
    }
}

/// One step on a single qubit's line.
#[derive(Debug, Clone, PartialEq)]
pub enum LineOp {
    Prep(PrepGate),
    /// `gate` applied `repeat` times on `group` (which contains this qubit).
    Gate { gate: String, group: Vec<usize>, repeat: u64 },
    Delay { ns: f64 },
    Unprep(PrepGate),
    Measure { bit: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkCircuit {
    /// Stable pair index used to derive this circuit's seed.
    pub pair_index: u64,
    pub spectator_gate: String,
    pub driver_gate: String,
    pub driver_depth: u64,
    pub spectator_depth: u64,
    pub delay: Delay,
    pub assignment: RoleAssignment,
    /// Preparation state of each spectator qubit.
    pub prep: BTreeMap<usize, PrepState>,
    /// Classical bit `i` reads `spectator_qubits[i]`; ascending qubit order.
    pub spectator_qubits: Vec<usize>,
    /// Driver qubits adjacent to each entry of `spectator_qubits`.
    pub driver_neighbors: Vec<usize>,
    pub num_qubits: usize,
}

impl BenchmarkCircuit {
    /// `<spectator>_<driver>`, used for file names and count keys.
    pub fn name(&self) -> String {
        format!("{}_{}", self.spectator_gate, self.driver_gate)
    }

    pub fn delay_ns(&self) -> f64 {
        self.delay.ns
    }

    pub fn spectator_count(&self) -> usize {
        self.spectator_qubits.len()
    }

    /// Spectator depth exceeds driver depth because the gate order does.
    pub fn exceeds_driver_depth(&self) -> bool {
        self.spectator_depth > self.driver_depth
    }

    pub fn line(&self, qubit: usize) -> Vec<LineOp> {
        match self.assignment.roles.get(qubit) {
            Some(Role::Driver) => {
                let group = self
                    .assignment
                    .driver_groups
                    .iter()
                    .find(|g| g.qubits.contains(&qubit))
                    .map(|g| g.qubits.clone())
                    .unwrap_or_else(|| vec![qubit]);
                vec![LineOp::Gate {
                    gate: self.driver_gate.clone(),
                    group,
                    repeat: self.driver_depth,
                }]
            }
            Some(Role::Spectator) => {
                let group = self
                    .assignment
                    .spectator_groups
                    .iter()
                    .find(|g| g.qubits.contains(&qubit))
                    .map(|g| g.qubits.clone())
                    .unwrap_or_else(|| vec![qubit]);
                let state = self.prep.get(&qubit).copied().unwrap_or(PrepState::Z0);
                let bit = self.spectator_qubits.iter().position(|&q| q == qubit).unwrap_or(0);
                let mut ops: Vec<LineOp> = prep_sequence(state).into_iter().map(LineOp::Prep).collect();
                ops.push(LineOp::Gate {
                    gate: self.spectator_gate.clone(),
                    group,
                    repeat: self.spectator_depth,
                });
                if self.delay.ns > 0.0 {
                    ops.push(LineOp::Delay { ns: self.delay.ns });
                }
                ops.extend(unprep_sequence(state).into_iter().map(LineOp::Unprep));
                ops.push(LineOp::Measure { bit });
                ops
            }
            _ => Vec::new(),
        }
    }

    /// Lines of every qubit that holds a role.
    pub fn timeline(&self) -> BTreeMap<usize, Vec<LineOp>> {
        (0..self.num_qubits)
            .map(|q| (q, self.line(q)))
            .filter(|(_, ops)| !ops.is_empty())
            .collect()
    }

    /// Gate and delay time on a line. Preparation gates are not counted.
    pub fn line_duration_ns(&self, qubit: usize, gate_set: &GateSet) -> f64 {
        self.line(qubit)
            .iter()
            .map(|op| match op {
                LineOp::Gate { gate, repeat, .. } => {
                    gate_set.get(gate).map(|g| g.duration_ns).unwrap_or(0.0) * *repeat as f64
                }
                LineOp::Delay { ns } => *ns,
                _ => 0.0,
            })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSet {
    pub set_id: String,
    pub config: BenchmarkConfig,
    pub gate_set: GateSet,
    pub topology: DeviceTopology,
    /// Row-major over (spectator, driver) in gate-set order.
    pub circuits: Vec<BenchmarkCircuit>,
}

impl BenchmarkSet {
    pub fn circuit(&self, spectator: &str, driver: &str) -> Option<&BenchmarkCircuit> {
        self.circuits
            .iter()
            .find(|c| c.spectator_gate == spectator && c.driver_gate == driver)
    }

    pub fn driver_depth(&self) -> u64 {
        self.circuits.first().map(|c| c.driver_depth).unwrap_or(1)
    }
}

fn driver_neighbor_counts(topology: &DeviceTopology, assignment: &RoleAssignment, spectators: &[usize]) -> Vec<usize> {
    spectators
        .iter()
        .map(|&q| {
            topology
                .adjacent(q)
                .iter()
                .filter(|&&v| assignment.roles[v] == Role::Driver)
                .count()
        })
        .collect()
}

/// Builds the circuit for one ordered pair. `seed` drives both placement and
/// the preparation-state draws, in that order.
pub fn build_circuit(
    topology: &DeviceTopology,
    gate_set: &GateSet,
    config: &BenchmarkConfig,
    spectator_index: usize,
    driver_index: usize,
) -> Result<BenchmarkCircuit, BuildError> {
    let spectator = &gate_set.gates()[spectator_index];
    let driver = &gate_set.gates()[driver_index];
    let index = pair_index(spectator_index, driver_index);
    let seed = derive_seed(config.seed, index);
    let mut rng = SeededRng::new(seed);

    let d_driver = driver_depth(gate_set.max_error(), config.delta)?;
    let d_spectator = spectator_depth(spectator, d_driver);
    let delay = delay_time(gate_set, spectator, d_driver, d_spectator);

    let thresholds = config.thresholds_for(topology, spectator, driver);
    let assignment = assign_roles_with_rng(
        topology,
        spectator,
        driver,
        Some(thresholds),
        config.fill_passes,
        seed,
        &mut rng,
    )
    .map_err(|source| BuildError::Placement {
        spectator: spectator.name.clone(),
        driver: driver.name.clone(),
        source,
    })?;

    let spectator_qubits = assignment.spectator_qubits();
    let prep = spectator_qubits
        .iter()
        .map(|&q| (q, config.prep_states[rng.below(config.prep_states.len())]))
        .collect();
    let driver_neighbors = driver_neighbor_counts(topology, &assignment, &spectator_qubits);

    Ok(BenchmarkCircuit {
        pair_index: index,
        spectator_gate: spectator.name.clone(),
        driver_gate: driver.name.clone(),
        driver_depth: d_driver,
        spectator_depth: d_spectator,
        delay,
        assignment,
        prep,
        spectator_qubits,
        driver_neighbors,
        num_qubits: topology.num_qubits(),
    })
}

/// One circuit per ordered gate pair, same-gate pairs included.
pub fn build_benchmark_set(topology: &DeviceTopology, gate_set: &GateSet, config: &BenchmarkConfig) -> Result<BenchmarkSet, BuildError> {
    config.validate()?;
    let n = gate_set.gates().len();
    let mut circuits = Vec::with_capacity(n * n);
    for s in 0..n {
        for d in 0..n {
            circuits.push(build_circuit(topology, gate_set, config, s, d)?);
        }
    }
    Ok(BenchmarkSet {
        set_id: config.set_id(),
        config: config.clone(),
        gate_set: gate_set.clone(),
        topology: topology.clone(),
        circuits,
    })
}
