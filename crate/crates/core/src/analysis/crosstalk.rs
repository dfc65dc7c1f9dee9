use serde::{Deserialize, Serialize};

use super::counts::{count_set_bits, CountsDocument};
use super::table::ErrorRateTable;
use super::AnalysisError;

/// Where the per-spectator baseline comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "rates")]
pub enum BaselineMode {
    /// The `ID` driver column (matched case-insensitively).
    IdDriver,
    /// The smallest rate in each spectator row: a lower bound on crosstalk.
    MinDriver,
    /// Rates from a control batch with idle drivers, one per spectator gate.
    Control(Vec<f64>),
}

impl BaselineMode {
    pub fn name(&self) -> &'static str {
        match self {
            BaselineMode::IdDriver => "id_driver",
            BaselineMode::MinDriver => "min_driver",
            BaselineMode::Control(_) => "control",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrosstalkTable {
    pub gates: Vec<String>,
    pub mode: String,
    /// Baseline per spectator row.
    pub baseline: Vec<f64>,
    /// `rate[s][d] - baseline[s]`; negative values are kept.
    pub values: Vec<Vec<f64>>,
}

impl CrosstalkTable {
    pub fn get(&self, spectator: &str, driver: &str) -> Option<f64> {
        let s = self.gates.iter().position(|g| g == spectator)?;
        let d = self.gates.iter().position(|g| g == driver)?;
        Some(self.values[s][d])
    }
}

pub fn crosstalk_estimate(table: &ErrorRateTable, mode: &BaselineMode) -> Result<CrosstalkTable, AnalysisError> {
    let baseline: Vec<f64> = match mode {
        BaselineMode::IdDriver => {
            let id = table
                .gates
                .iter()
                .position(|g| g.eq_ignore_ascii_case("ID"))
                .ok_or_else(|| AnalysisError::MissingBaseline("no ID driver column".into()))?;
            table.rates.iter().map(|row| row[id]).collect()
        }
        BaselineMode::MinDriver => table
            .rates
            .iter()
            .map(|row| row.iter().copied().fold(f64::INFINITY, f64::min))
            .collect(),
        BaselineMode::Control(rates) => {
            if rates.len() != table.gates.len() {
                return Err(AnalysisError::MissingBaseline(format!(
                    "control supplies {} rates for {} spectator gates",
                    rates.len(),
                    table.gates.len()
                )));
            }
            rates.clone()
        }
    };
    let values = table
        .rates
        .iter()
        .zip(&baseline)
        .map(|(row, b)| row.iter().map(|r| r - b).collect())
        .collect();
    Ok(CrosstalkTable {
        gates: table.gates.clone(),
        mode: mode.name().to_string(),
        baseline,
        values,
    })
}

/// Pooled error rate per spectator gate from a control batch.
///
/// Entries are keyed `<spectator>_<label>` (or just `<spectator>`); every
/// entry matching a spectator gate is pooled, and the spectator count is
/// taken from the bitstring length.
pub fn control_baseline(control: &CountsDocument, gates: &[String]) -> Result<Vec<f64>, AnalysisError> {
    gates
        .iter()
        .map(|gate| {
            let prefix = format!("{gate}_");
            let mut ones = 0u64;
            let mut bits = 0u64;
            for (key, counts) in &control.results {
                if key != gate && !key.starts_with(&prefix) {
                    continue;
                }
                let width = counts.keys().next().map(|k| k.len()).unwrap_or(0);
                if width == 0 {
                    return Err(AnalysisError::NoSpectators);
                }
                ones += count_set_bits(counts, control.shots, width)
                    .map_err(|e| AnalysisError::InCircuit(key.clone(), Box::new(e)))?;
                bits += control.shots * width as u64;
            }
            if bits == 0 {
                return Err(AnalysisError::MissingBaseline(format!("control has no entry for spectator `{gate}`")));
            }
            Ok(ones as f64 / bits as f64)
        })
        .collect()
}
