//! OpenQASM 3.0 emission.
//!
//! Gates are written layer by layer so a scheduler sees drivers and
//! spectators running side by side. Barriers fence the spectator body on both
//! ends; without them an optimizing transpiler would cancel the
//! identity-equivalent sequence outright, so runners must also execute with
//! optimization disabled.

use std::fmt::Write;

use thiserror::Error;

use super::prep::{prep_sequence, unprep_sequence};
use super::BenchmarkCircuit;
use crate::device::GateSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmitError {
    #[error("gate `{0}` has no emit_name")]
    MissingEmitName(String),
    #[error("gate `{0}` is not in the gate set")]
    UnknownGate(String),
}

fn emit_name<'a>(gate_set: &'a GateSet, name: &str) -> Result<&'a str, EmitError> {
    let gate = gate_set.get(name).ok_or_else(|| EmitError::UnknownGate(name.to_string()))?;
    gate.emit_name
        .as_deref()
        .ok_or_else(|| EmitError::MissingEmitName(name.to_string()))
}

fn operands(qubits: &[usize]) -> String {
    qubits.iter().map(|q| format!("q[{q}]")).collect::<Vec<_>>().join(", ")
}

pub fn emit_qasm(circuit: &BenchmarkCircuit, gate_set: &GateSet) -> Result<String, EmitError> {
    let spectator = emit_name(gate_set, &circuit.spectator_gate)?;
    let driver = emit_name(gate_set, &circuit.driver_gate)?;
    let a = &circuit.assignment;

    let mut out = String::new();
    // writes to a String cannot fail
    let _ = writeln!(out, "OPENQASM 3.0;");
    let _ = writeln!(out, "include \"stdgates.inc\";");
    let _ = writeln!(
        out,
        "// spectator={} driver={} driver_depth={} spectator_depth={} delay_ns={}",
        circuit.spectator_gate, circuit.driver_gate, circuit.driver_depth, circuit.spectator_depth, circuit.delay.ns
    );
    let _ = writeln!(out, "qubit[{}] q;", circuit.num_qubits);
    let _ = writeln!(out, "bit[{}] c;", circuit.spectator_count());

    for &q in &circuit.spectator_qubits {
        for g in prep_sequence(circuit.prep[&q]) {
            let _ = writeln!(out, "{} q[{q}];", g.qasm_name());
        }
    }
    let _ = writeln!(out, "barrier q;");

    let layers = circuit.driver_depth.max(circuit.spectator_depth);
    for layer in 0..layers {
        if layer < circuit.spectator_depth {
            for g in &a.spectator_groups {
                let _ = writeln!(out, "{spectator} {};", operands(&g.qubits));
            }
        }
        if layer < circuit.driver_depth {
            for g in &a.driver_groups {
                let _ = writeln!(out, "{driver} {};", operands(&g.qubits));
            }
        }
    }

    let delay = circuit.delay.ns.round() as u64;
    if delay > 0 {
        for &q in &circuit.spectator_qubits {
            let _ = writeln!(out, "delay[{delay}ns] q[{q}];");
        }
    }
    let _ = writeln!(out, "barrier q;");

    for &q in &circuit.spectator_qubits {
        for g in unprep_sequence(circuit.prep[&q]) {
            let _ = writeln!(out, "{} q[{q}];", g.qasm_name());
        }
    }
    for (bit, &q) in circuit.spectator_qubits.iter().enumerate() {
        let _ = writeln!(out, "c[{bit}] = measure q[{q}];");
    }
    Ok(out)
}
