//! generate -> simulate -> report through the files a hardware runner
//! would exchange: set directories, counts documents and the report
//! directory.
//!
//! ```bash
//! cargo run --example end_to_end -- /tmp/crossbench-demo
//! ```

use std::fs;
use std::path::PathBuf;

use crossbench::analysis::{series_from_counts, BaselineMode, CountsDocument, Report};
use crossbench::circuit::{read_set_dir, write_set_dir};
use crossbench::device::{load_gate_set, load_topology};
use crossbench::noise::simulate_set;
use crossbench::{build_benchmark_set, BenchmarkConfig, NoiseModel};

fn main() -> anyhow::Result<()> {
    let root = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("crossbench-demo"));
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let topology = load_topology(&fs::read_to_string(format!("{data}/heavy_hex_20.json"))?)?;
    let gates = load_gate_set(&fs::read_to_string(format!("{data}/ibm_heron_gates.json"))?)?;
    let mut model = NoiseModel::from_json(&fs::read_to_string(format!("{data}/noise_crosstalk.json"))?)?;

    let mut count_files = Vec::new();
    let mut set_dirs = Vec::new();
    for run in 0..7u64 {
        let dir = write_set_dir(&build_benchmark_set(&topology, &gates, &BenchmarkConfig::with_seed(run))?, &root.join("sets"))?;

        // a runner only sees the directory
        let set = read_set_dir(&dir)?.to_benchmark_set()?;
        model.seed = run;
        let counts = simulate_set(&set, &model, 10_000)?;
        let path = root.join(format!("counts-{run}.json"));
        fs::write(&path, counts.to_json())?;
        count_files.push(path);
        set_dirs.push(dir);
    }

    let counts = count_files
        .iter()
        .map(|p| Ok(CountsDocument::from_json(&fs::read_to_string(p)?)?))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let metadata = set_dirs.iter().map(|d| read_set_dir(d)).collect::<Result<Vec<_>, _>>()?;
    let report = Report::build(&series_from_counts(&counts, &metadata)?, &BaselineMode::IdDriver)?;
    let out = root.join("report");
    report.write_dir(&out)?;

    println!("{}", report.aggregate_csv());
    println!("report written to {}", out.display());
    Ok(())
}
