use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::matrix::{standard, Matrix};

/// Entrywise tolerance for unitarity and order checks.
pub const UNITARY_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum GateError {
    #[error("failed to parse gate-set document: {0}")]
    Parse(String),
    #[error("gate `{0}`: arity must be at least 1")]
    ZeroArity(String),
    #[error("gate `{0}`: duration must be positive and finite, got {1}")]
    BadDuration(String, f64),
    #[error("gate `{0}`: order must be at least 1")]
    ZeroOrder(String),
    #[error("gate `{name}`: unitary must be {expected}x{expected}, got {got}x{got}")]
    UnitaryDimension { name: String, expected: usize, got: usize },
    #[error("gate `{0}`: matrix is not unitary")]
    NotUnitary(String),
    #[error("gate `{0}`: unitary raised to its order is not a phase times identity")]
    OrderMismatch(String),
    #[error("gate `{0}` has no unitary to check")]
    NoUnitary(String),
    #[error("gate set must contain at least one gate")]
    EmptyGateSet,
    #[error("duplicate gate name `{0}`")]
    DuplicateName(String),
    #[error("max_error must lie strictly between 0 and 1, got {0}")]
    BadMaxError(f64),
}

/// A native gate: how many qubits it touches, how long it takes, and how many
/// repetitions return it to the identity up to a global phase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateSpec {
    pub name: String,
    pub arity: usize,
    pub duration_ns: f64,
    pub order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub emit_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitary: Option<Matrix>,
}

impl GateSpec {
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        duration_ns: f64,
        order: u32,
        emit_name: Option<String>,
        unitary: Option<Matrix>,
    ) -> Result<Self, GateError> {
        let gate = Self {
            name: name.into(),
            arity,
            duration_ns,
            order,
            emit_name,
            unitary,
        };
        gate.validate()?;
        Ok(gate)
    }

    pub fn validate(&self) -> Result<(), GateError> {
        let name = || self.name.clone();
        if self.arity == 0 {
            return Err(GateError::ZeroArity(name()));
        }
        if !(self.duration_ns.is_finite() && self.duration_ns > 0.0) {
            return Err(GateError::BadDuration(name(), self.duration_ns));
        }
        if self.order == 0 {
            return Err(GateError::ZeroOrder(name()));
        }
        if let Some(u) = &self.unitary {
            let expected = 1usize << self.arity;
            if u.dim() != expected {
                return Err(GateError::UnitaryDimension {
                    name: name(),
                    expected,
                    got: u.dim(),
                });
            }
            if !u.is_unitary(UNITARY_TOL) {
                return Err(GateError::NotUnitary(name()));
            }
            if !u.pow(self.order as u64).is_phase_times_identity(UNITARY_TOL) {
                return Err(GateError::OrderMismatch(name()));
            }
        }
        Ok(())
    }

    /// True iff the declared order is the smallest `n` with `U^n = e^{iθ} I`.
    pub fn verify_order(&self) -> Result<bool, GateError> {
        let u = self.unitary.as_ref().ok_or_else(|| GateError::NoUnitary(self.name.clone()))?;
        if self.order == 0 {
            return Ok(false);
        }
        let mut power = Matrix::identity(u.dim());
        for m in 1..=self.order {
            power = &power * u;
            if power.is_phase_times_identity(UNITARY_TOL) {
                return Ok(m == self.order);
            }
        }
        Ok(false)
    }

    pub fn x() -> Self {
        Self::standard("X", 1, 36.0, 2, "x", standard::x())
    }

    pub fn sx() -> Self {
        Self::standard("SX", 1, 36.0, 4, "sx", standard::sx())
    }

    pub fn cz() -> Self {
        Self::standard("CZ", 2, 68.0, 2, "cz", standard::cz())
    }

    /// Identity realized as a timed idle of one single-qubit gate slot.
    pub fn id() -> Self {
        Self::standard("ID", 1, 36.0, 1, "id", standard::id())
    }

    fn standard(name: &str, arity: usize, duration_ns: f64, order: u32, emit: &str, u: Matrix) -> Self {
        Self {
            name: name.into(),
            arity,
            duration_ns,
            order,
            emit_name: Some(emit.into()),
            unitary: Some(u),
        }
    }
}

/// Gate-set document:
/// `{"max_error": float, "gates": [{"name", "arity", "duration_ns", "order", "emit_name", "unitary"?}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateSetDocument {
    pub max_error: f64,
    pub gates: Vec<GateSpec>,
}

/// Native gates under test plus the device-wide maximum gate error `E`.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSet {
    gates: Vec<GateSpec>,
    max_error: f64,
}

impl GateSet {
    pub fn new(gates: Vec<GateSpec>, max_error: f64) -> Result<Self, GateError> {
        if gates.is_empty() {
            return Err(GateError::EmptyGateSet);
        }
        if !(max_error > 0.0 && max_error < 1.0) {
            return Err(GateError::BadMaxError(max_error));
        }
        let mut names = HashSet::new();
        for g in &gates {
            g.validate()?;
            if !names.insert(g.name.as_str()) {
                return Err(GateError::DuplicateName(g.name.clone()));
            }
        }
        Ok(Self { gates, max_error })
    }

    /// X, SX, CZ and ID with Heron-like durations.
    pub fn ibm_heron(max_error: f64) -> Result<Self, GateError> {
        Self::new(vec![GateSpec::x(), GateSpec::sx(), GateSpec::cz(), GateSpec::id()], max_error)
    }

    pub fn from_document(doc: GateSetDocument) -> Result<Self, GateError> {
        Self::new(doc.gates, doc.max_error)
    }

    pub fn to_document(&self) -> GateSetDocument {
        GateSetDocument {
            max_error: self.max_error,
            gates: self.gates.clone(),
        }
    }

    pub fn gates(&self) -> &[GateSpec] {
        &self.gates
    }

    pub fn names(&self) -> Vec<String> {
        self.gates.iter().map(|g| g.name.clone()).collect()
    }

    pub fn max_error(&self) -> f64 {
        self.max_error
    }

    pub fn get(&self, name: &str) -> Option<&GateSpec> {
        self.gates.iter().find(|g| g.name == name)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gates.iter().position(|g| g.name == name)
    }

    /// Longest-duration gate; the first one wins ties.
    pub fn longest(&self) -> &GateSpec {
        let mut best = &self.gates[0];
        for g in &self.gates[1..] {
            if g.duration_ns > best.duration_ns {
                best = g;
            }
        }
        best
    }
}

pub fn load_gate_set(source: &str) -> Result<GateSet, GateError> {
    let doc: GateSetDocument = serde_json::from_str(source).map_err(|e| GateError::Parse(e.to_string()))?;
    GateSet::from_document(doc)
}
