//! Aggregate several simulated runs, run Welch tests between driver gates
//! and estimate crosstalk against each baseline.
//!
//! ```bash
//! cargo run --example analyze_runs
//! ```

use std::fs;

use crossbench::analysis::{series_from_counts, BaselineMode, Report};
use crossbench::device::{load_gate_set, load_topology};
use crossbench::noise::simulate_set;
use crossbench::{build_benchmark_set, emit_metadata, BenchmarkConfig, NoiseModel};

fn main() -> anyhow::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let topology = load_topology(&fs::read_to_string(format!("{data}/heavy_hex_20.json"))?)?;
    let gates = load_gate_set(&fs::read_to_string(format!("{data}/ibm_heron_gates.json"))?)?;
    let mut model = NoiseModel::from_json(&fs::read_to_string(format!("{data}/noise_crosstalk.json"))?)?;

    let mut counts = Vec::new();
    let mut metadata = Vec::new();
    for run in 0..7 {
        let set = build_benchmark_set(&topology, &gates, &BenchmarkConfig::with_seed(run))?;
        model.seed = 100 + run;
        counts.push(simulate_set(&set, &model, 10_000)?);
        metadata.push(emit_metadata(&set));
    }
    let series = series_from_counts(&counts, &metadata)?;
    let report = Report::build(&series, &BaselineMode::IdDriver)?;

    println!("per-driver average over {} runs:", report.runs);
    for d in &report.per_driver {
        println!("  {:<3} {:.4} +/- {:.4}", d.driver, d.mean, d.std_err);
    }
    println!("\nCZ vs ID driver, per spectator gate:");
    for s in &report.gates {
        let t = report.t_test(s, "CZ", "ID").expect("both drivers present");
        println!("  {s:<3} t = {:>8.2}  p = {:.2e}", t.t, t.p);
    }
    for mode in [BaselineMode::IdDriver, BaselineMode::MinDriver] {
        let r = Report::build(&series, &mode)?;
        println!("\ncrosstalk ({}):\n{}", r.crosstalk.mode, r.crosstalk_csv());
    }
    Ok(())
}
