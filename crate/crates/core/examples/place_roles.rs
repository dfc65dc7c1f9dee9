//! Role placement on the bundled 20-qubit heavy-hex topology.
//!
//! Prints one layout per arity combination and checks it with
//! `validate_assignment`.
//!
//! ```bash
//! cargo run --example place_roles
//! ```

use std::fs;

use crossbench::device::load_topology;
use crossbench::placement::Role;
use crossbench::{assign_roles, validate_assignment, GateSpec, Thresholds};

fn main() -> anyhow::Result<()> {
    let topology = load_topology(&fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/heavy_hex_20.json"))?)?;

    for (spectator, driver) in [(GateSpec::x(), GateSpec::x()), (GateSpec::sx(), GateSpec::cz()), (GateSpec::cz(), GateSpec::id())] {
        let a = assign_roles(&topology, &spectator, &driver, None, true, 7)?;
        let row: String = a
            .roles
            .iter()
            .map(|r| match r {
                Role::Driver => 'D',
                Role::Spectator => 'S',
                _ => '.',
            })
            .collect();
        println!(
            "{:>2} spectator / {:>2} driver  {row}  groups {}+{}  utilization {:.2}  violations {}",
            spectator.name,
            driver.name,
            a.driver_groups.len(),
            a.spectator_groups.len(),
            a.utilization(),
            validate_assignment(&topology, &a).len()
        );
    }

    // strict thresholds: one driver group, one spectator group, no fill passes
    let strict = assign_roles(&topology, &GateSpec::x(), &GateSpec::cz(), Some(Thresholds::new(1, 1)), false, 7)?;
    println!(
        "strict: drivers {:?} spectators {:?}",
        strict.driver_qubits(),
        strict.spectator_qubits()
    );
    Ok(())
}
