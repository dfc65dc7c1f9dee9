//! Driver depth, spectator depth and alignment delay.
//!
//! The driver depth targets a cumulative driver-gate error of about `delta`:
//!
//! ```text
//! d_D = max(1, round(delta * 10^k)),  k = ceil(log10(1 / E))
//! ```
//!
//! so `d_D = delta / E` whenever `E` is a power of ten, and `1/E` is rounded
//! up to the next power of ten otherwise. (Taken literally, the textbook
//! `10^-ceil(log E^-2) * delta` yields depths below one for realistic `E`.)

use log::warn;
use thiserror::Error;

use crate::device::{GateSet, GateSpec};

#[derive(Debug, Error, PartialEq)]
pub enum DepthError {
    #[error("max gate error must lie strictly between 0 and 1, got {0}")]
    MaxError(f64),
    #[error("delta must lie in (0, 1], got {0}")]
    Delta(f64),
}

/// Smallest `k` with `10^k * E >= 1`, tolerant to representation error in `E`.
fn decade_exponent(max_error: f64) -> i32 {
    let mut k = 0;
    while 10f64.powi(k) * max_error < 1.0 - 1e-12 {
        k += 1;
    }
    k
}

pub fn driver_depth(max_error: f64, delta: f64) -> Result<u64, DepthError> {
    if !(max_error > 0.0 && max_error < 1.0) {
        return Err(DepthError::MaxError(max_error));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(DepthError::Delta(delta));
    }
    let depth = (delta * 10f64.powi(decade_exponent(max_error))).round();
    Ok((depth as u64).max(1))
}

/// Largest multiple of the gate order not exceeding `driver_depth`, or the
/// order itself when it exceeds `driver_depth`.
pub fn spectator_depth(spectator_gate: &GateSpec, driver_depth: u64) -> u64 {
    let order = spectator_gate.order as u64;
    if order > driver_depth {
        order
    } else {
        order * (driver_depth / order)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Delay {
    /// Delay actually scheduled, never negative.
    pub ns: f64,
    /// `duration(g_max) * d_D - duration(g_s) * d_s` before clamping.
    pub raw_ns: f64,
}

impl Delay {
    pub fn is_clamped(&self) -> bool {
        self.raw_ns < 0.0
    }
}

/// Idle time that stretches the spectator line to the longest possible
/// driver line: `duration(g_max) * d_D - duration(g_s) * d_s`, clamped at 0.
pub fn delay_time(gate_set: &GateSet, spectator_gate: &GateSpec, driver_depth: u64, spectator_depth: u64) -> Delay {
    let raw_ns = gate_set.longest().duration_ns * driver_depth as f64 - spectator_gate.duration_ns * spectator_depth as f64;
    if raw_ns < 0.0 {
        warn!(
            "spectator gate {} runs {} ns past the driver window; delay clamped to 0",
            spectator_gate.name, -raw_ns
        );
    }
    Delay {
        ns: raw_ns.max(0.0),
        raw_ns,
    }
}
