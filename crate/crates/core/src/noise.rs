//! Parametric crosstalk model and seeded count sampler.
//!
//! Each spectator bit flips independently with
//!
//! ```text
//! p(q) = 1 - (1 - spam) * (1 - gate_error[g_s])^d_s * (1 - kappa[g_D])^(d_D * n_D(q))
//! ```
//!
//! where `n_D(q)` is the number of driver qubits adjacent to `q`. Decoherence
//! is folded into `spam`: every circuit in a set has the same wall time, so
//! it is a common offset.

use std::collections::{BTreeMap, HashMap};

use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::CountsDocument;
use crate::circuit::{BenchmarkCircuit, BenchmarkSet};
use crate::rng::{derive_seed, SeededRng};

/// Shots drawn per independent stream.
pub const SHOT_BLOCK: u64 = 4096;

#[derive(Debug, Error, PartialEq)]
pub enum NoiseError {
    #[error("failed to parse noise model: {0}")]
    Parse(String),
    #[error("{field} probability {value} for `{name}` is outside [0, 1)")]
    Probability { field: &'static str, name: String, value: f64 },
    #[error("noise model has no {field} entry for gate `{name}`")]
    UnknownGate { field: &'static str, name: String },
}

/// Noise-model document:
/// `{"spam_error": float, "gate_error": {name: float}, "crosstalk": {name: float}, "seed": int}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub spam_error: f64,
    #[serde(default)]
    pub gate_error: BTreeMap<String, f64>,
    /// Per-application flip probability on each adjacent spectator, by driver gate.
    #[serde(default)]
    pub crosstalk: BTreeMap<String, f64>,
    #[serde(default)]
    pub seed: u64,
}

impl NoiseModel {
    /// Noiseless model covering `gates`.
    pub fn zero<S: AsRef<str>>(gates: &[S], seed: u64) -> Self {
        let zeros: BTreeMap<String, f64> = gates.iter().map(|g| (g.as_ref().to_string(), 0.0)).collect();
        Self {
            spam_error: 0.0,
            gate_error: zeros.clone(),
            crosstalk: zeros,
            seed,
        }
    }

    pub fn from_json(src: &str) -> Result<Self, NoiseError> {
        let model: NoiseModel = serde_json::from_str(src).map_err(|e| NoiseError::Parse(e.to_string()))?;
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<(), NoiseError> {
        let check = |field: &'static str, name: &str, value: f64| {
            if (0.0..1.0).contains(&value) {
                Ok(())
            } else {
                Err(NoiseError::Probability {
                    field,
                    name: name.to_string(),
                    value,
                })
            }
        };
        check("spam_error", "*", self.spam_error)?;
        for (name, &p) in &self.gate_error {
            check("gate_error", name, p)?;
        }
        for (name, &p) in &self.crosstalk {
            check("crosstalk", name, p)?;
        }
        Ok(())
    }

    fn lookup(map: &BTreeMap<String, f64>, field: &'static str, name: &str) -> Result<f64, NoiseError> {
        map.get(name).copied().ok_or_else(|| NoiseError::UnknownGate {
            field,
            name: name.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedRates {
    /// Aligned with the circuit's `spectator_qubits`.
    pub per_qubit: Vec<f64>,
    pub mean: f64,
}

pub fn expected_error_rate(circuit: &BenchmarkCircuit, model: &NoiseModel) -> Result<ExpectedRates, NoiseError> {
    let gate_error = NoiseModel::lookup(&model.gate_error, "gate_error", &circuit.spectator_gate)?;
    let kappa = NoiseModel::lookup(&model.crosstalk, "crosstalk", &circuit.driver_gate)?;

    let survive_gates = (1.0 - gate_error).powf(circuit.spectator_depth as f64);
    let per_qubit: Vec<f64> = circuit
        .driver_neighbors
        .iter()
        .map(|&n| {
            let exposures = (circuit.driver_depth * n as u64) as f64;
            1.0 - (1.0 - model.spam_error) * survive_gates * (1.0 - kappa).powf(exposures)
        })
        .collect();
    let mean = if per_qubit.is_empty() {
        0.0
    } else {
        per_qubit.iter().sum::<f64>() / per_qubit.len() as f64
    };
    Ok(ExpectedRates { per_qubit, mean })
}

/// Splits `shots` across the `2^k` outcomes one bit at a time with binomial
/// draws. Equivalent in distribution to drawing every bit of every shot, but
/// only visits outcomes that actually occur.
fn sample_block(probs: &[f64], shots: u64, rng: &mut SeededRng, out: &mut HashMap<Vec<u8>, u64>) {
    fn split(probs: &[f64], level: usize, n: u64, prefix: &mut Vec<u8>, rng: &mut SeededRng, out: &mut HashMap<Vec<u8>, u64>) {
        if n == 0 {
            return;
        }
        if level == probs.len() {
            *out.entry(prefix.clone()).or_insert(0) += n;
            return;
        }
        let ones = Binomial::new(n, probs[level]).expect("probability in [0, 1]").sample(rng);
        prefix.push(b'1');
        split(probs, level + 1, ones, prefix, rng, out);
        prefix.pop();
        prefix.push(b'0');
        split(probs, level + 1, n - ones, prefix, rng, out);
        prefix.pop();
    }
    split(probs, 0, shots, &mut Vec::with_capacity(probs.len()), rng, out);
}

/// Seeded counts for one circuit. Bit `i` of each key reports
/// `spectator_qubits[i]`; `'1'` marks an error. Block `b` draws from
/// `derive_seed(derive_seed(model.seed, pair_index), b)`.
pub fn sample_counts(circuit: &BenchmarkCircuit, model: &NoiseModel, shots: u64) -> Result<BTreeMap<String, u64>, NoiseError> {
    let probs = expected_error_rate(circuit, model)?.per_qubit;
    let circuit_seed = derive_seed(model.seed, circuit.pair_index);
    let mut tally = HashMap::new();
    let mut done = 0;
    let mut block = 0;
    while done < shots {
        let n = SHOT_BLOCK.min(shots - done);
        let mut rng = SeededRng::new(derive_seed(circuit_seed, block));
        sample_block(&probs, n, &mut rng, &mut tally);
        done += n;
        block += 1;
    }
    Ok(tally
        .into_iter()
        .map(|(k, v)| (String::from_utf8(k).expect("ascii bits"), v))
        .collect())
}

/// Simulates every circuit of a set into a counts document.
pub fn simulate_set(set: &BenchmarkSet, model: &NoiseModel, shots: u64) -> Result<CountsDocument, NoiseError> {
    model.validate()?;
    let results = set
        .circuits
        .par_iter()
        .map(|c| sample_counts(c, model, shots).map(|counts| (c.name(), counts)))
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    Ok(CountsDocument {
        set_id: set.set_id.clone(),
        shots,
        results,
    })
}
