//! Device topology and native gate set.

pub mod gates;
pub mod matrix;
pub mod topology;

pub use gates::{load_gate_set, GateError, GateSet, GateSetDocument, GateSpec, UNITARY_TOL};
pub use matrix::Matrix;
pub use topology::{load_topology, DeviceTopology, TopologyDocument, TopologyError};
