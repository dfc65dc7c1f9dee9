//! Feed a measured error-rate table (IBM Fez, seven-run average) through
//! the report pipeline as if it were seven identical runs.
//!
//! ```bash
//! cargo run --example fixture_table_report
//! ```

use crossbench::analysis::{BaselineMode, ErrorRateTable, Report, RunSeries};

fn main() -> anyhow::Result<()> {
    let gates: Vec<String> = ["CZ", "ID", "SX", "X"].iter().map(|s| s.to_string()).collect();
    let fez = vec![
        vec![0.365, 0.324, 0.317, 0.334],
        vec![0.145, 0.135, 0.161, 0.151],
        vec![0.182, 0.200, 0.207, 0.212],
        vec![0.261, 0.244, 0.244, 0.236],
    ];
    let mut series = RunSeries::new();
    for run in 0..7 {
        series.push(format!("fez-{run}"), ErrorRateTable::new(gates.clone(), fez.clone())?)?;
    }
    let report = Report::build(&series, &BaselineMode::IdDriver)?;

    println!("aggregate mean:\n{}", report.aggregate_csv());
    println!("standard error:\n{}", report.stderr_csv());
    println!("per driver:\n{}", report.per_driver_csv());
    println!("crosstalk vs ID driver:\n{}", report.crosstalk_csv());
    Ok(())
}
