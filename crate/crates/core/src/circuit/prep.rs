use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::device::matrix::{standard, Matrix};

/// The six single-qubit Pauli eigenstates a spectator can start in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PrepState {
    /// |0>
    Z0,
    /// |1>
    Z1,
    /// |+>
    Xp,
    /// |->
    Xm,
    /// |i>
    Yp,
    /// |-i>
    Ym,
}

impl PrepState {
    pub const ALL: [PrepState; 6] = [
        PrepState::Z0,
        PrepState::Z1,
        PrepState::Xp,
        PrepState::Xm,
        PrepState::Yp,
        PrepState::Ym,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PrepState::Z0 => "Z0",
            PrepState::Z1 => "Z1",
            PrepState::Xp => "Xp",
            PrepState::Xm => "Xm",
            PrepState::Yp => "Yp",
            PrepState::Ym => "Ym",
        }
    }
}

impl fmt::Display for PrepState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown preparation state `{0}` (expected one of Z0, Z1, Xp, Xm, Yp, Ym)")]
pub struct UnknownPrepState(pub String);

impl FromStr for PrepState {
    type Err = UnknownPrepState;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PrepState::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownPrepState(s.to_string()))
    }
}

/// Gates used to move |0> to a prepared state and back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrepGate {
    X,
    H,
    S,
    Sdg,
}

impl PrepGate {
    pub fn inverse(self) -> PrepGate {
        match self {
            PrepGate::S => PrepGate::Sdg,
            PrepGate::Sdg => PrepGate::S,
            g => g,
        }
    }

    /// OpenQASM `stdgates.inc` name.
    pub fn qasm_name(self) -> &'static str {
        match self {
            PrepGate::X => "x",
            PrepGate::H => "h",
            PrepGate::S => "s",
            PrepGate::Sdg => "sdg",
        }
    }

    pub fn matrix(self) -> Matrix {
        match self {
            PrepGate::X => standard::x(),
            PrepGate::H => standard::h(),
            PrepGate::S => standard::s(),
            PrepGate::Sdg => standard::sdg(),
        }
    }
}

/// Gates in application order that take |0> to `state`.
pub fn prep_sequence(state: PrepState) -> Vec<PrepGate> {
    use PrepGate::*;
    match state {
        PrepState::Z0 => vec![],
        PrepState::Z1 => vec![X],
        PrepState::Xp => vec![H],
        PrepState::Xm => vec![X, H],
        PrepState::Yp => vec![H, S],
        PrepState::Ym => vec![H, Sdg],
    }
}

/// Inverse of [`prep_sequence`]: inverted gates in reverse order.
pub fn unprep_sequence(state: PrepState) -> Vec<PrepGate> {
    prep_sequence(state).into_iter().rev().map(PrepGate::inverse).collect()
}
