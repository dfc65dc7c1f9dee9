use std::fs;
use std::path::Path;

use crossbench::analysis::{series_from_counts, BaselineMode, CountsDocument, ErrorRateTable, Report};
use crossbench::circuit::{read_set_dir, write_set_dir, LineOp};
use crossbench::device::{load_gate_set, load_topology};
use crossbench::noise::{expected_error_rate, simulate_set, NoiseModel};
use crossbench::{build_benchmark_set, emit_metadata, BenchmarkConfig, BenchmarkSet, PrepState};

fn data(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)).unwrap()
}

fn bundled_set(seed: u64) -> BenchmarkSet {
    let t = load_topology(&data("heavy_hex_20.json")).unwrap();
    let g = load_gate_set(&data("ibm_heron_gates.json")).unwrap();
    build_benchmark_set(&t, &g, &BenchmarkConfig::with_seed(seed)).unwrap()
}

#[test]
fn bundled_gate_set_orders_hold() {
    let g = load_gate_set(&data("ibm_heron_gates.json")).unwrap();
    assert_eq!(g.names(), ["CZ", "ID", "SX", "X"]);
    for spec in g.gates() {
        assert!(spec.verify_order().unwrap(), "{}", spec.name);
    }
}

#[test]
fn set_directory_round_trips_through_simulation() {
    let tmp = tempfile::tempdir().unwrap();
    let set = bundled_set(12);
    let dir = write_set_dir(&set, tmp.path()).unwrap();
    let meta = read_set_dir(&dir).unwrap();
    let rebuilt = meta.to_benchmark_set().unwrap();
    assert_eq!(rebuilt, set);

    let model = NoiseModel::from_json(&data("noise_crosstalk.json")).unwrap();
    let a = simulate_set(&set, &model, 3000).unwrap();
    let b = simulate_set(&rebuilt, &model, 3000).unwrap();
    assert_eq!(a, b);
    assert_eq!(CountsDocument::from_json(&a.to_json()).unwrap(), a);

    let table = ErrorRateTable::from_counts(&a, &meta).unwrap();
    for (s, row) in table.rates.iter().enumerate() {
        for (d, &rate) in row.iter().enumerate() {
            let c = set.circuit(&table.gates[s], &table.gates[d]).unwrap();
            let expected = expected_error_rate(c, &model).unwrap().mean;
            let n = (3000 * c.spectator_count()) as f64;
            assert!((rate - expected).abs() < 5.0 * (expected * (1.0 - expected) / n).sqrt() + 1e-9);
        }
    }
}

#[test]
fn counts_for_another_set_are_rejected() {
    let a = bundled_set(1);
    let b = bundled_set(2);
    let model = NoiseModel::from_json(&data("noise_null.json")).unwrap();
    let counts = simulate_set(&a, &model, 100).unwrap();
    assert!(ErrorRateTable::from_counts(&counts, &emit_metadata(&b)).is_err());
    assert!(series_from_counts(&[counts], &[emit_metadata(&b)]).is_err());
}

#[test]
fn every_spectator_line_is_prep_body_delay_unprep_measure() {
    let set = bundled_set(3);
    for c in &set.circuits {
        for (bit, &q) in c.spectator_qubits.iter().enumerate() {
            let line = c.line(q);
            let gate_at = line.iter().position(|op| matches!(op, LineOp::Gate { .. })).unwrap();
            assert!(line[..gate_at].iter().all(|op| matches!(op, LineOp::Prep(_))));
            assert_eq!(line.last(), Some(&LineOp::Measure { bit }));
            if c.prep[&q] == PrepState::Z0 {
                assert!(!line.iter().any(|op| matches!(op, LineOp::Unprep(_))));
            }
        }
        for q in c.assignment.driver_qubits() {
            assert!(c.line(q).iter().all(|op| matches!(op, LineOp::Gate { .. })));
        }
    }
}

#[test]
fn crosstalk_model_is_recovered_from_simulated_runs() {
    let model = NoiseModel::from_json(&data("noise_crosstalk.json")).unwrap();
    let sets: Vec<_> = (0..3).map(|i| bundled_set(50 + i)).collect();
    let counts: Vec<_> = sets.iter().map(|s| simulate_set(s, &model, 10_000).unwrap()).collect();
    let meta: Vec<_> = sets.iter().map(emit_metadata).collect();
    let series = series_from_counts(&counts, &meta).unwrap();
    let report = Report::build(&series, &BaselineMode::IdDriver).unwrap();
    let cz = report.per_driver.iter().find(|d| d.driver == "CZ").unwrap();
    let id = report.per_driver.iter().find(|d| d.driver == "ID").unwrap();
    assert!(cz.mean > id.mean);
    assert!(report.crosstalk.values.iter().all(|row| row[0] > 0.0));
}
