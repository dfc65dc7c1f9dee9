use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::counts::CountsDocument;
use super::crosstalk::{crosstalk_estimate, BaselineMode, CrosstalkTable};
use super::stats::welch_t_test;
use super::table::{aggregate_runs, per_driver_average, summarize, Aggregate, ErrorRateTable, RunSeries, SpectatorShare};
use super::AnalysisError;
use crate::circuit::SetMetadata;

pub const REPORT_FILE: &str = "report.json";
pub const AGGREGATE_CSV: &str = "aggregate_mean.csv";
pub const STDERR_CSV: &str = "aggregate_stderr.csv";
pub const PER_DRIVER_CSV: &str = "per_driver.csv";
pub const T_TESTS_CSV: &str = "t_tests.csv";
pub const CROSSTALK_CSV: &str = "crosstalk.csv";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriverSummary {
    pub driver: String,
    pub mean: f64,
    /// Standard error of the per-run driver average; zero with one run.
    pub std_err: f64,
    pub breakdown: Vec<SpectatorShare>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairTest {
    pub spectator: String,
    pub driver_a: String,
    pub driver_b: String,
    pub t: f64,
    pub df: f64,
    pub p: f64,
    pub mean_a: f64,
    pub mean_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub runs: usize,
    pub run_ids: Vec<String>,
    pub se_available: bool,
    pub gates: Vec<String>,
    pub aggregate: Aggregate,
    pub per_driver: Vec<DriverSummary>,
    /// Every driver pair within each spectator row; empty with one run.
    pub t_tests: Vec<PairTest>,
    pub crosstalk: CrosstalkTable,
    pub notes: Vec<String>,
}

/// Pairs each counts document with the metadata of the same `set_id`.
pub fn series_from_counts(counts: &[CountsDocument], metadata: &[SetMetadata]) -> Result<RunSeries, AnalysisError> {
    let mut series = RunSeries::new();
    for doc in counts {
        let meta = metadata
            .iter()
            .find(|m| m.set_id == doc.set_id)
            .ok_or_else(|| AnalysisError::SetMismatch {
                counts: doc.set_id.clone(),
                metadata: metadata.iter().map(|m| m.set_id.as_str()).collect::<Vec<_>>().join(", "),
            })?;
        series.push(doc.set_id.clone(), ErrorRateTable::from_counts(doc, meta)?)?;
    }
    Ok(series)
}

impl Report {
    pub fn build(series: &RunSeries, baseline: &BaselineMode) -> Result<Self, AnalysisError> {
        let aggregate = aggregate_runs(series)?;
        let gates = aggregate.gates.clone();
        let n = gates.len();
        let mean_table = aggregate.mean_table();
        let mut notes = Vec::new();

        let run_averages: Vec<Vec<f64>> = series
            .tables
            .iter()
            .map(|t| per_driver_average(t).into_iter().map(|a| a.mean).collect())
            .collect();
        let per_driver = per_driver_average(&mean_table)
            .into_iter()
            .enumerate()
            .map(|(d, avg)| {
                let (_, _, se) = summarize(&run_averages.iter().map(|r| r[d]).collect::<Vec<_>>());
                DriverSummary {
                    driver: avg.driver,
                    mean: avg.mean,
                    std_err: se,
                    breakdown: avg.breakdown,
                }
            })
            .collect();

        let mut t_tests = Vec::new();
        if aggregate.se_available {
            for s in 0..n {
                for a in 0..n {
                    for b in a + 1..n {
                        let r = welch_t_test(&series.cell(s, a), &series.cell(s, b))?;
                        t_tests.push(PairTest {
                            spectator: gates[s].clone(),
                            driver_a: gates[a].clone(),
                            driver_b: gates[b].clone(),
                            t: r.t,
                            df: r.df,
                            p: r.p,
                            mean_a: r.mean_a,
                            mean_b: r.mean_b,
                        });
                    }
                }
            }
        } else {
            notes.push(format!(
                "standard errors and t-tests unavailable with {} run; SE columns are 0",
                series.len()
            ));
        }

        let crosstalk = crosstalk_estimate(&mean_table, baseline)?;
        Ok(Self {
            runs: series.len(),
            run_ids: series.run_ids.clone(),
            se_available: aggregate.se_available,
            gates,
            aggregate,
            per_driver,
            t_tests,
            crosstalk,
            notes,
        })
    }

    /// The test for one spectator row and driver pair, in either order.
    pub fn t_test(&self, spectator: &str, driver_a: &str, driver_b: &str) -> Option<&PairTest> {
        self.t_tests.iter().find(|t| {
            t.spectator == spectator
                && ((t.driver_a == driver_a && t.driver_b == driver_b) || (t.driver_a == driver_b && t.driver_b == driver_a))
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    fn matrix_csv(&self, m: &[Vec<f64>]) -> String {
        let mut out = format!("spectator,{}\n", self.gates.join(","));
        for (g, row) in self.gates.iter().zip(m) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{g},{}", cells.join(","));
        }
        out
    }

    /// Mean error rates; rows are spectator gates, columns driver gates.
    pub fn aggregate_csv(&self) -> String {
        self.matrix_csv(&self.aggregate.mean)
    }

    pub fn stderr_csv(&self) -> String {
        self.matrix_csv(&self.aggregate.std_err)
    }

    pub fn crosstalk_csv(&self) -> String {
        self.matrix_csv(&self.crosstalk.values)
    }

    pub fn per_driver_csv(&self) -> String {
        let mut out = format!("driver,mean,std_err,{}\n", self.gates.join(","));
        for d in &self.per_driver {
            let shares: Vec<String> = d.breakdown.iter().map(|b| b.share.to_string()).collect();
            let _ = writeln!(out, "{},{},{},{}", d.driver, d.mean, d.std_err, shares.join(","));
        }
        out
    }

    pub fn t_tests_csv(&self) -> String {
        let mut out = String::from("spectator,driver_a,driver_b,mean_a,mean_b,t,df,p\n");
        for t in &self.t_tests {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                t.spectator, t.driver_a, t.driver_b, t.mean_a, t.mean_b, t.t, t.df, t.p
            );
        }
        out
    }

    /// Writes the JSON report and the CSV tables into `dir`.
    pub fn write_dir(&self, dir: &Path) -> Result<(), AnalysisError> {
        let files = [
            (REPORT_FILE, self.to_json()),
            (AGGREGATE_CSV, self.aggregate_csv()),
            (STDERR_CSV, self.stderr_csv()),
            (PER_DRIVER_CSV, self.per_driver_csv()),
            (T_TESTS_CSV, self.t_tests_csv()),
            (CROSSTALK_CSV, self.crosstalk_csv()),
        ];
        fs::create_dir_all(dir).map_err(|e| AnalysisError::io(dir, e))?;
        for (name, body) in files {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| AnalysisError::io(&path, e))?;
        }
        Ok(())
    }
}
