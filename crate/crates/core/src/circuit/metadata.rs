//! Benchmark-set metadata and the on-disk set layout.
//!
//! A set directory holds `<spectator>_<driver>.qasm` per pair plus
//! `metadata.json`. The metadata carries the topology and gate set as well,
//! so a set can be rebuilt (and simulated) from the directory alone.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::depth::Delay;
use super::prep::PrepState;
use super::qasm::{emit_qasm, EmitError};
use super::{BenchmarkCircuit, BenchmarkConfig, BenchmarkSet, BuildError};
use crate::device::{DeviceTopology, GateSet, GateSetDocument, TopologyDocument};
use crate::placement::{GateGroup, RoleAssignment, Thresholds};

pub const METADATA_FILE: &str = "metadata.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitMetadata {
    pub name: String,
    pub pair_index: u64,
    pub spectator_gate: String,
    pub driver_gate: String,
    pub driver_depth: u64,
    pub spectator_depth: u64,
    /// Exact delay; the QASM file carries it rounded to whole nanoseconds.
    pub delay_ns: f64,
    pub raw_delay_ns: f64,
    pub delay_clamped: bool,
    /// Spectator depth was raised to the gate order, past the driver depth.
    pub exceeds_driver_depth: bool,
    pub spectator_count: usize,
    pub spectator_qubits: Vec<usize>,
    /// Aligned with `spectator_qubits`.
    pub prep_states: Vec<PrepState>,
    /// Aligned with `spectator_qubits`.
    pub driver_neighbors: Vec<usize>,
    pub driver_groups: Vec<GateGroup>,
    pub spectator_groups: Vec<GateGroup>,
    pub seed: u64,
    pub thresholds: Thresholds,
    pub fill_passes: bool,
    pub utilization: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetMetadata {
    pub set_id: String,
    pub config: BenchmarkConfig,
    pub topology: TopologyDocument,
    pub gate_set: GateSetDocument,
    pub circuits: Vec<CircuitMetadata>,
}

impl SetMetadata {
    pub fn gate_names(&self) -> Vec<String> {
        self.gate_set.gates.iter().map(|g| g.name.clone()).collect()
    }

    pub fn circuit(&self, name: &str) -> Option<&CircuitMetadata> {
        self.circuits.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("metadata serializes");
        s.push('\n');
        s
    }

    pub fn from_json(src: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(src)
    }

    /// Rebuilds the full set, including per-qubit timelines.
    pub fn to_benchmark_set(&self) -> Result<BenchmarkSet, BuildError> {
        let topology = DeviceTopology::from_document(&self.topology).map_err(|e| BuildError::Metadata(e.to_string()))?;
        let gate_set = GateSet::from_document(self.gate_set.clone()).map_err(|e| BuildError::Metadata(e.to_string()))?;
        let n = topology.num_qubits();
        let mut circuits = Vec::with_capacity(self.circuits.len());
        for c in &self.circuits {
            if c.prep_states.len() != c.spectator_qubits.len() || c.driver_neighbors.len() != c.spectator_qubits.len() {
                return Err(BuildError::Metadata(format!("{}: per-spectator arrays differ in length", c.name)));
            }
            let out_of_range = c
                .driver_groups
                .iter()
                .chain(&c.spectator_groups)
                .flat_map(|g| &g.qubits)
                .any(|&q| q >= n);
            if out_of_range {
                return Err(BuildError::Metadata(format!("{}: group qubit out of range", c.name)));
            }
            let assignment = RoleAssignment::from_groups(
                n,
                c.driver_groups.clone(),
                c.spectator_groups.clone(),
                c.seed,
                c.thresholds,
                c.fill_passes,
            );
            circuits.push(BenchmarkCircuit {
                pair_index: c.pair_index,
                spectator_gate: c.spectator_gate.clone(),
                driver_gate: c.driver_gate.clone(),
                driver_depth: c.driver_depth,
                spectator_depth: c.spectator_depth,
                delay: Delay {
                    ns: c.delay_ns,
                    raw_ns: c.raw_delay_ns,
                },
                assignment,
                prep: c.spectator_qubits.iter().copied().zip(c.prep_states.iter().copied()).collect::<BTreeMap<_, _>>(),
                spectator_qubits: c.spectator_qubits.clone(),
                driver_neighbors: c.driver_neighbors.clone(),
                num_qubits: n,
            });
        }
        Ok(BenchmarkSet {
            set_id: self.set_id.clone(),
            config: self.config.clone(),
            gate_set,
            topology,
            circuits,
        })
    }
}

fn circuit_metadata(c: &BenchmarkCircuit) -> CircuitMetadata {
    CircuitMetadata {
        name: c.name(),
        pair_index: c.pair_index,
        spectator_gate: c.spectator_gate.clone(),
        driver_gate: c.driver_gate.clone(),
        driver_depth: c.driver_depth,
        spectator_depth: c.spectator_depth,
        delay_ns: c.delay.ns,
        raw_delay_ns: c.delay.raw_ns,
        delay_clamped: c.delay.is_clamped(),
        exceeds_driver_depth: c.exceeds_driver_depth(),
        spectator_count: c.spectator_count(),
        spectator_qubits: c.spectator_qubits.clone(),
        prep_states: c.spectator_qubits.iter().map(|q| c.prep[q]).collect(),
        driver_neighbors: c.driver_neighbors.clone(),
        driver_groups: c.assignment.driver_groups.clone(),
        spectator_groups: c.assignment.spectator_groups.clone(),
        seed: c.assignment.seed,
        thresholds: c.assignment.thresholds,
        fill_passes: c.assignment.fill_passes_enabled,
        utilization: c.assignment.utilization(),
    }
}

pub fn emit_metadata(set: &BenchmarkSet) -> SetMetadata {
    SetMetadata {
        set_id: set.set_id.clone(),
        config: set.config.clone(),
        topology: set.topology.to_document(),
        gate_set: set.gate_set.to_document(),
        circuits: set.circuits.iter().map(circuit_metadata).collect(),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SetIoError {
    #[error(transparent)]
    Emit(#[from] EmitError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> SetIoError + '_ {
    move |source| SetIoError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes `<root>/<set_id>/` and returns that directory.
pub fn write_set_dir(set: &BenchmarkSet, root: &Path) -> Result<PathBuf, SetIoError> {
    let dir = root.join(&set.set_id);
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    for c in &set.circuits {
        let path = dir.join(format!("{}.qasm", c.name()));
        fs::write(&path, emit_qasm(c, &set.gate_set)?).map_err(io_err(&path))?;
    }
    let path = dir.join(METADATA_FILE);
    fs::write(&path, emit_metadata(set).to_json()).map_err(io_err(&path))?;
    Ok(dir)
}

/// Reads `metadata.json` from a set directory, or from the file itself.
pub fn read_set_dir(path: &Path) -> Result<SetMetadata, SetIoError> {
    let file = if path.is_dir() { path.join(METADATA_FILE) } else { path.to_path_buf() };
    let text = fs::read_to_string(&file).map_err(io_err(&file))?;
    SetMetadata::from_json(&text).map_err(|source| SetIoError::Json { path: file, source })
}
