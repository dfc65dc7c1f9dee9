use serde::{Deserialize, Serialize};

use super::counts::{error_rate, CountsDocument};
use super::AnalysisError;
use crate::circuit::SetMetadata;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSample {
    pub shots: u64,
    pub spectator_count: usize,
}

/// Error probabilities indexed `[spectator][driver]`, both axes in the same
/// gate order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRateTable {
    pub gates: Vec<String>,
    pub rates: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<Vec<CellSample>>,
}

impl ErrorRateTable {
    pub fn new(gates: Vec<String>, rates: Vec<Vec<f64>>) -> Result<Self, AnalysisError> {
        let n = gates.len();
        if rates.len() != n || rates.iter().any(|r| r.len() != n) {
            return Err(AnalysisError::Shape(format!("expected a {n}x{n} matrix")));
        }
        if let Some(v) = rates.iter().flatten().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(AnalysisError::Shape(format!("rate {v} outside [0, 1]")));
        }
        Ok(Self {
            gates,
            rates,
            samples: Vec::new(),
        })
    }

    /// One rate per circuit in `metadata`, read from `counts`.
    pub fn from_counts(counts: &CountsDocument, metadata: &SetMetadata) -> Result<Self, AnalysisError> {
        if counts.set_id != metadata.set_id {
            return Err(AnalysisError::SetMismatch {
                counts: counts.set_id.clone(),
                metadata: metadata.set_id.clone(),
            });
        }
        let gates = metadata.gate_names();
        let n = gates.len();
        let mut rates = vec![vec![0.0; n]; n];
        let mut samples = vec![vec![CellSample { shots: 0, spectator_count: 0 }; n]; n];
        for (s, spectator) in gates.iter().enumerate() {
            for (d, driver) in gates.iter().enumerate() {
                let name = format!("{spectator}_{driver}");
                let meta = metadata
                    .circuit(&name)
                    .ok_or_else(|| AnalysisError::MissingCircuit(name.clone()))?;
                let entry = counts
                    .results
                    .get(&name)
                    .ok_or_else(|| AnalysisError::MissingCircuit(name.clone()))?;
                rates[s][d] = error_rate(entry, counts.shots, meta.spectator_count)
                    .map_err(|e| AnalysisError::InCircuit(name.clone(), Box::new(e)))?;
                samples[s][d] = CellSample {
                    shots: counts.shots,
                    spectator_count: meta.spectator_count,
                };
            }
        }
        Ok(Self { gates, rates, samples })
    }

    pub fn index_of(&self, gate: &str) -> Option<usize> {
        self.gates.iter().position(|g| g == gate)
    }

    pub fn get(&self, spectator: &str, driver: &str) -> Option<f64> {
        Some(self.rates[self.index_of(spectator)?][self.index_of(driver)?])
    }
}

/// Tables from repeated runs over the same gate axes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunSeries {
    pub run_ids: Vec<String>,
    pub tables: Vec<ErrorRateTable>,
}

impl RunSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, run_id: impl Into<String>, table: ErrorRateTable) -> Result<(), AnalysisError> {
        if let Some(first) = self.tables.first() {
            if first.gates != table.gates {
                return Err(AnalysisError::AxisMismatch {
                    expected: first.gates.clone(),
                    got: table.gates,
                });
            }
        }
        self.run_ids.push(run_id.into());
        self.tables.push(table);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn gates(&self) -> &[String] {
        self.tables.first().map(|t| t.gates.as_slice()).unwrap_or(&[])
    }

    /// Run-level values of one cell.
    pub fn cell(&self, spectator: usize, driver: usize) -> Vec<f64> {
        self.tables.iter().map(|t| t.rates[spectator][driver]).collect()
    }
}

/// Mean, sample standard deviation and standard error of `values`.
///
/// The mean is accumulated as offsets from the first value, so a run of
/// identical values has exactly that mean and zero spread.
pub fn summarize(values: &[f64]) -> (f64, f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, 0.0, 0.0);
    }
    let first = values[0];
    let mean = first + values.iter().map(|v| v - first).sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let sd = var.sqrt();
    (mean, sd, sd / (n as f64).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub gates: Vec<String>,
    pub runs: usize,
    pub mean: Vec<Vec<f64>>,
    pub std_dev: Vec<Vec<f64>>,
    /// Zero when fewer than two runs; see `se_available`.
    pub std_err: Vec<Vec<f64>>,
    pub se_available: bool,
}

impl Aggregate {
    pub fn mean_table(&self) -> ErrorRateTable {
        ErrorRateTable {
            gates: self.gates.clone(),
            rates: self.mean.clone(),
            samples: Vec::new(),
        }
    }
}

pub fn aggregate_runs(series: &RunSeries) -> Result<Aggregate, AnalysisError> {
    if series.is_empty() {
        return Err(AnalysisError::NoRuns);
    }
    let n = series.gates().len();
    let mut mean = vec![vec![0.0; n]; n];
    let mut std_dev = mean.clone();
    let mut std_err = mean.clone();
    for s in 0..n {
        for d in 0..n {
            let (m, sd, se) = summarize(&series.cell(s, d));
            mean[s][d] = m;
            std_dev[s][d] = sd;
            std_err[s][d] = se;
        }
    }
    Ok(Aggregate {
        gates: series.gates().to_vec(),
        runs: series.len(),
        mean,
        std_dev,
        std_err,
        se_available: series.len() >= 2,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectatorShare {
    pub spectator: String,
    pub rate: f64,
    /// Contribution to the driver average: `rate / number_of_spectator_gates`.
    pub share: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriverAverage {
    pub driver: String,
    pub mean: f64,
    pub breakdown: Vec<SpectatorShare>,
}

/// Unweighted mean of each driver column over spectator gates.
pub fn per_driver_average(table: &ErrorRateTable) -> Vec<DriverAverage> {
    let n = table.gates.len();
    (0..n)
        .map(|d| {
            let breakdown: Vec<SpectatorShare> = (0..n)
                .map(|s| SpectatorShare {
                    spectator: table.gates[s].clone(),
                    rate: table.rates[s][d],
                    share: table.rates[s][d] / n as f64,
                })
                .collect();
            let (mean, _, _) = summarize(&breakdown.iter().map(|b| b.rate).collect::<Vec<_>>());
            DriverAverage {
                driver: table.gates[d].clone(),
                mean,
                breakdown,
            }
        })
        .collect()
}
