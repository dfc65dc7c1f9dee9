//! Driver depth, spectator depths and padding delays for a gate set.
//!
//! ```bash
//! cargo run --example depths_and_delays
//! ```

use crossbench::{delay_time, driver_depth, spectator_depth, GateSet, GateSpec};

fn main() -> anyhow::Result<()> {
    let gates = GateSet::ibm_heron(0.001)?;
    for delta in [0.1, 0.05, 0.01] {
        println!("E = 0.001, delta = {delta}: d_D = {}", driver_depth(0.001, delta)?);
    }

    let d_driver = driver_depth(gates.max_error(), 0.1)?;
    let longest = gates.longest();
    println!("\nlongest gate {} ({} ns); line length {} ns", longest.name, longest.duration_ns, longest.duration_ns * d_driver as f64);
    println!("{:<4} {:>5} {:>5} {:>10}", "gate", "order", "d_s", "delay ns");
    for g in gates.gates() {
        let d_s = spectator_depth(g, d_driver);
        let delay = delay_time(&gates, g, d_driver, d_s);
        println!("{:<4} {:>5} {:>5} {:>10}", g.name, g.order, d_s, delay.ns);
    }

    // an order-8 gate at a driver depth of 3 runs past the drivers
    let mut slow = GateSpec::x();
    slow.order = 8;
    slow.unitary = None;
    println!("\norder 8, d_D = 3: d_s = {}", spectator_depth(&slow, 3));
    Ok(())
}
