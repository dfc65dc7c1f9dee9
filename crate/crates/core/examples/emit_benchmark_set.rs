//! Generate a benchmark set and write it to disk: one OpenQASM 3 file per
//! ordered gate pair plus `metadata.json`.
//!
//! ```bash
//! cargo run --example emit_benchmark_set -- /tmp/crossbench-sets
//! ```

use std::fs;
use std::path::PathBuf;

use crossbench::circuit::write_set_dir;
use crossbench::device::{load_gate_set, load_topology};
use crossbench::{build_benchmark_set, BenchmarkConfig};

fn main() -> anyhow::Result<()> {
    let root = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("crossbench-sets"));
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let topology = load_topology(&fs::read_to_string(format!("{data}/heavy_hex_20.json"))?)?;
    let gates = load_gate_set(&fs::read_to_string(format!("{data}/ibm_heron_gates.json"))?)?;

    let set = build_benchmark_set(&topology, &gates, &BenchmarkConfig::with_seed(2024))?;
    let dir = write_set_dir(&set, &root)?;
    println!("wrote {} circuits to {}", set.circuits.len(), dir.display());

    let sample = dir.join("SX_CZ.qasm");
    let text = fs::read_to_string(&sample)?;
    println!("\n{} (first 16 lines):", sample.display());
    for line in text.lines().take(16) {
        println!("  {line}");
    }
    Ok(())
}
