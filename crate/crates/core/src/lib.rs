//! Crosstalk benchmark generation and analysis for quantum devices.
//!
//! The crate builds one benchmark circuit per ordered pair of native gates.
//! Each circuit splits the device into *driver* qubits, which repeat a gate
//! to generate crosstalk, and *spectator* qubits, which run an
//! identity-equivalent sequence and are measured. Comparing spectator error
//! rates across driver gates isolates the crosstalk each gate contributes.
//!
//! The pipeline, module by module:
//!
//! - [`device`]: coupling topology and native gate set.
//! - [`placement`]: randomized four-pass role assignment with backtracking.
//! - [`circuit`]: depths, delays, timed circuits, OpenQASM 3 and metadata.
//! - [`noise`]: a closed-form crosstalk model and seeded count sampler.
//! - [`analysis`]: error rates, multi-run aggregation, Welch tests, crosstalk
//!   estimates and reports.
//! - [`cli`]: the `crossbench` command line (`generate`, `simulate`, `report`).
//!
//! Runnable walkthroughs of each capability live under `examples/`:
//!
//! ```bash
//! cargo run --example place_roles
//! cargo run --example end_to_end
//! ```

pub mod analysis;
pub mod circuit;
pub mod cli;
pub mod device;
pub mod noise;
pub mod placement;
pub mod rng;

pub use analysis::{
    aggregate_runs, crosstalk_estimate, error_rate, per_driver_average, welch_t_test, Aggregate,
    BaselineMode, CountsDocument, ErrorRateTable, Report, RunSeries, TTestResult,
};
pub use circuit::{
    build_benchmark_set, delay_time, driver_depth, emit_metadata, emit_qasm, spectator_depth,
    BenchmarkCircuit, BenchmarkConfig, BenchmarkSet, PrepState, SetMetadata,
};
pub use device::{DeviceTopology, GateSet, GateSpec};
pub use noise::NoiseModel;
pub use placement::{assign_roles, validate_assignment, RoleAssignment, Thresholds};
