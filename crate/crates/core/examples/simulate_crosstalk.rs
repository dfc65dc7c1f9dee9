//! Sample counts from the parametric crosstalk model and compare observed
//! error rates with the closed form.
//!
//! ```bash
//! cargo run --example simulate_crosstalk
//! ```

use std::fs;

use crossbench::analysis::error_rate;
use crossbench::device::{load_gate_set, load_topology};
use crossbench::noise::{expected_error_rate, simulate_set};
use crossbench::{build_benchmark_set, BenchmarkConfig, NoiseModel};

fn main() -> anyhow::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let topology = load_topology(&fs::read_to_string(format!("{data}/heavy_hex_20.json"))?)?;
    let gates = load_gate_set(&fs::read_to_string(format!("{data}/ibm_heron_gates.json"))?)?;
    let model = NoiseModel::from_json(&fs::read_to_string(format!("{data}/noise_crosstalk.json"))?)?;

    let set = build_benchmark_set(&topology, &gates, &BenchmarkConfig::with_seed(5))?;
    let counts = simulate_set(&set, &model, 10_000)?;

    println!("{:<8} {:>10} {:>10}", "circuit", "observed", "expected");
    for c in &set.circuits {
        let observed = error_rate(&counts.results[&c.name()], counts.shots, c.spectator_count())?;
        let expected = expected_error_rate(c, &model)?.mean;
        println!("{:<8} {observed:>10.5} {expected:>10.5}", c.name());
    }
    Ok(())
}
