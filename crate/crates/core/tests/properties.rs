use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crossbench::analysis::{aggregate_runs, crosstalk_estimate, error_rate, welch_t_test, BaselineMode, ErrorRateTable, RunSeries};
use crossbench::circuit::{build_benchmark_set, BenchmarkConfig};
use crossbench::noise::{sample_counts, NoiseModel};
use crossbench::rng::SeededRng;
use crossbench::{assign_roles, validate_assignment, DeviceTopology, GateSet, GateSpec, Thresholds};

fn graph(max_nodes: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>, bool)> {
    (2..=max_nodes, any::<bool>()).prop_flat_map(|(n, directed)| {
        let pairs = proptest::collection::vec((0..n, 0..n), 0..=2 * n);
        (Just(n), pairs, Just(directed)).prop_map(|(n, raw, directed)| {
            let mut seen = BTreeSet::new();
            let edges = raw
                .into_iter()
                .filter(|(a, b)| a != b && seen.insert((*a.min(b), *a.max(b))))
                .collect();
            (n, edges, directed)
        })
    })
}

/// Random spanning tree plus extra edges, so every qubit has a neighbor.
fn connected(max_nodes: usize) -> impl Strategy<Value = DeviceTopology> {
    (3..=max_nodes, any::<bool>(), any::<u64>()).prop_map(|(n, directed, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs = BTreeSet::new();
        for v in 1..n {
            pairs.insert((rng.random_range(0..v), v));
        }
        for _ in 0..n / 2 {
            let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
            if a != b {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
        let edges: Vec<_> = pairs
            .into_iter()
            .map(|(a, b)| if directed && rng.random_bool(0.5) { (b, a) } else { (a, b) })
            .collect();
        DeviceTopology::new(n, &edges, directed).unwrap()
    })
}

fn gate(arity: usize) -> GateSpec {
    if arity == 1 {
        GateSpec::x()
    } else {
        GateSpec::cz()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn neighbor_relation_is_symmetric((n, edges, directed) in graph(200)) {
        let t = DeviceTopology::new(n, &edges, directed).unwrap();
        for u in 0..n {
            for &v in t.neighbors(u).unwrap() {
                prop_assert!(t.neighbors(v).unwrap().contains(&u));
            }
        }
        prop_assert!(t.neighbors(n).is_err());
    }

    #[test]
    fn placements_are_always_valid(
        t in connected(60),
        spectator_arity in 1..=2usize,
        driver_arity in 1..=2usize,
        thresholds in proptest::option::of((0..6usize, 0..6usize)),
        fill in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let thresholds = thresholds.map(|(d, s)| Thresholds::new(d, s));
        if let Ok(a) = assign_roles(&t, &gate(spectator_arity), &gate(driver_arity), thresholds, fill, seed) {
            prop_assert_eq!(validate_assignment(&t, &a), vec![]);
            let again = assign_roles(&t, &gate(spectator_arity), &gate(driver_arity), thresholds, fill, seed).unwrap();
            prop_assert_eq!(a, again);
        }
    }

    #[test]
    fn error_rate_ignores_key_order_and_scales_linearly(
        entries in proptest::collection::btree_map("[01]{3}", 1..500u64, 1..8),
        k in 1..5u64,
    ) {
        let shots: u64 = entries.values().sum();
        let rate = error_rate(&entries, shots, 3).unwrap();
        let reversed: BTreeMap<String, u64> = entries.iter().rev().map(|(a, b)| (a.clone(), *b)).collect();
        prop_assert_eq!(error_rate(&reversed, shots, 3).unwrap(), rate);
        let scaled: BTreeMap<String, u64> = entries.iter().map(|(a, b)| (a.clone(), b * k)).collect();
        prop_assert!((error_rate(&scaled, shots * k, 3).unwrap() - rate).abs() < 1e-15);
    }

    #[test]
    fn welch_is_antisymmetric(
        a in proptest::collection::vec(0.0..1.0f64, 2..10),
        b in proptest::collection::vec(0.0..1.0f64, 2..10),
    ) {
        let ab = welch_t_test(&a, &b).unwrap();
        let ba = welch_t_test(&b, &a).unwrap();
        prop_assert_eq!(ab.t, -ba.t);
        prop_assert_eq!(ab.p, ba.p);
        prop_assert!((0.0..=1.0).contains(&ab.p));
    }

    #[test]
    fn aggregate_mean_is_within_run_range(
        runs in proptest::collection::vec(proptest::collection::vec(0.0..=1.0f64, 4), 1..10),
    ) {
        let gates: Vec<String> = vec!["A".into(), "B".into()];
        let mut series = RunSeries::new();
        for (i, r) in runs.iter().enumerate() {
            let table = ErrorRateTable::new(gates.clone(), vec![r[..2].to_vec(), r[2..].to_vec()]).unwrap();
            series.push(i.to_string(), table).unwrap();
        }
        let agg = aggregate_runs(&series).unwrap();
        for s in 0..2 {
            for d in 0..2 {
                let cell = series.cell(s, d);
                let lo = cell.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = cell.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                prop_assert!(lo <= agg.mean[s][d] && agg.mean[s][d] <= hi);
            }
        }
    }

    #[test]
    fn id_baseline_plus_id_column_reconstructs_table(cells in proptest::collection::vec(0..=1024u32, 9)) {
        // rates on a dyadic grid, where the subtraction is exact
        let rates: Vec<Vec<f64>> = cells.chunks(3).map(|r| r.iter().map(|&k| k as f64 / 1024.0).collect()).collect();
        let table = ErrorRateTable::new(vec!["ID".into(), "X".into(), "CZ".into()], rates.clone()).unwrap();
        let x = crosstalk_estimate(&table, &BaselineMode::IdDriver).unwrap();
        for s in 0..3 {
            for d in 0..3 {
                prop_assert_eq!(x.values[s][d] + rates[s][0], rates[s][d]);
            }
        }
    }

    #[test]
    fn id_baseline_reconstruction_is_within_one_rounding(cells in proptest::collection::vec(0.0..=1.0f64, 9)) {
        let rates: Vec<Vec<f64>> = cells.chunks(3).map(|r| r.to_vec()).collect();
        let table = ErrorRateTable::new(vec!["ID".into(), "X".into(), "CZ".into()], rates.clone()).unwrap();
        let x = crosstalk_estimate(&table, &BaselineMode::IdDriver).unwrap();
        for s in 0..3 {
            for d in 0..3 {
                let back = x.values[s][d] + rates[s][0];
                prop_assert!((back - rates[s][d]).abs() <= f64::EPSILON * rates[s][d].max(rates[s][0]));
            }
        }
    }

    #[test]
    fn min_driver_estimates_are_nonnegative(cells in proptest::collection::vec(0.0..=1.0f64, 16)) {
        let rates: Vec<Vec<f64>> = cells.chunks(4).map(|r| r.to_vec()).collect();
        let gates = ["CZ", "ID", "SX", "X"].iter().map(|s| s.to_string()).collect();
        let x = crosstalk_estimate(&ErrorRateTable::new(gates, rates).unwrap(), &BaselineMode::MinDriver).unwrap();
        for row in &x.values {
            prop_assert!(row.iter().all(|&v| v >= 0.0));
            prop_assert!(row.contains(&0.0));
        }
    }

    #[test]
    fn shuffles_are_seeded_permutations(items in proptest::collection::vec(any::<u32>(), 0..50), seed in any::<u64>()) {
        let a = SeededRng::new(seed).shuffled(&items);
        prop_assert_eq!(&a, &SeededRng::new(seed).shuffled(&items));
        let (mut x, mut y) = (a.clone(), items.clone());
        x.sort_unstable();
        y.sort_unstable();
        prop_assert_eq!(x, y);
    }
}

/// Synthetic Bernoulli counts: `shots` strings of `width` bits, each bit set
/// with probability `p`.
fn bernoulli_counts(p: f64, shots: u64, width: usize, rng: &mut ChaCha8Rng) -> BTreeMap<String, u64> {
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let key: String = (0..width).map(|_| if rng.random_bool(p) { '1' } else { '0' }).collect();
        *counts.entry(key).or_insert(0) += 1;
    }
    counts
}

#[test]
fn error_rate_concentrates_on_bernoulli_rate() {
    for trial in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(trial);
        let p = [0.01, 0.05, 0.095167, 0.2, 0.5][trial as usize % 5];
        let (shots, width) = (2_000, 5);
        let counts = bernoulli_counts(p, shots, width, &mut rng);
        let n = (shots * width as u64) as f64;
        let rate = error_rate(&counts, shots, width).unwrap();
        assert!((rate - p).abs() < 5.0 * (p * (1.0 - p) / n).sqrt(), "trial {trial}: {rate} vs {p}");
    }
}

#[test]
fn sampler_concentrates_on_bernoulli_rate() {
    let edges: Vec<_> = (0..11).map(|i| (i, i + 1)).collect();
    let t = DeviceTopology::new(12, &edges, false).unwrap();
    let set = build_benchmark_set(&t, &GateSet::ibm_heron(0.001).unwrap(), &BenchmarkConfig::with_seed(9)).unwrap();
    let circuit = set.circuit("X", "ID").unwrap();
    for trial in 0..100u64 {
        let mut model = NoiseModel::zero(&["X", "SX", "CZ", "ID"], trial);
        model.spam_error = 0.095167;
        let shots = 10_000;
        let counts = sample_counts(circuit, &model, shots).unwrap();
        let n = (shots * circuit.spectator_count() as u64) as f64;
        let rate = error_rate(&counts, shots, circuit.spectator_count()).unwrap();
        let p = model.spam_error;
        assert!((rate - p).abs() < 5.0 * (p * (1.0 - p) / n).sqrt(), "trial {trial}: {rate}");
    }
}
