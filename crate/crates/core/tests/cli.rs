use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn crossbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossbench"))
        .args(args)
        .env_remove("CROSSBENCH_SEED")
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate(out: &Path, seed: u64, gates: &Path) -> PathBuf {
    let seed = seed.to_string();
    let o = crossbench(&[
        "generate",
        "--topology",
        s(&data("heavy_hex_20.json")),
        "--gates",
        s(gates),
        "--seed",
        &seed,
        "--out",
        s(out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out.join(format!("seed-{seed}"))
}

fn simulate(bench: &Path, model: &Path, out: &Path) -> Output {
    crossbench(&["simulate", "--bench", s(bench), "--noise-model", s(model), "--shots", "2000", "--out", s(out)])
}

#[test]
fn generate_writes_sixteen_circuits_and_reports_depth() {
    let tmp = tempfile::tempdir().unwrap();
    let out = crossbench(&[
        "generate",
        "--topology",
        s(&data("heavy_hex_20.json")),
        "--gates",
        s(&data("ibm_heron_gates.json")),
        "--seed",
        "4",
        "--out",
        s(tmp.path()),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("driver depth: 100"));
    assert_eq!(stdout.matches("utilization").count(), 16);
    let dir = tmp.path().join("seed-4");
    let qasm = fs::read_dir(&dir)
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "qasm"))
        .count();
    assert_eq!(qasm, 16);
    assert!(dir.join("metadata.json").is_file());
}

#[test]
fn seed_falls_back_to_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_crossbench"))
        .args(["generate", "--topology", s(&data("heavy_hex_20.json")), "--gates", s(&data("ibm_heron_gates.json"))])
        .args(["--out", s(tmp.path())])
        .env("CROSSBENCH_SEED", "31")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(tmp.path().join("seed-31").is_dir());
}

#[test]
fn unreadable_topology_names_the_path() {
    let tmp = tempfile::tempdir().unwrap();
    let missing = tmp.path().join("nope.json");
    let o = crossbench(&[
        "generate",
        "--topology",
        s(&missing),
        "--gates",
        s(&data("ibm_heron_gates.json")),
        "--out",
        s(tmp.path()),
    ]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope.json"));
}

#[test]
fn negative_threshold_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let o = crossbench(&[
        "generate",
        "--topology",
        s(&data("heavy_hex_20.json")),
        "--gates",
        s(&data("ibm_heron_gates.json")),
        "--driver-threshold",
        "-1",
        "--out",
        s(tmp.path()),
    ]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("threshold"));
}

#[test]
fn zero_model_gives_all_zero_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let bench = generate(tmp.path(), 1, &data("ibm_heron_gates.json"));
    let model = tmp.path().join("zero.json");
    fs::write(
        &model,
        r#"{"spam_error": 0.0, "gate_error": {"CZ": 0, "ID": 0, "SX": 0, "X": 0}, "crosstalk": {"CZ": 0, "ID": 0, "SX": 0, "X": 0}, "seed": 3}"#,
    )
    .unwrap();
    let counts = tmp.path().join("counts.json");
    assert!(simulate(&bench, &model, &counts).status.success());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&counts).unwrap()).unwrap();
    assert_eq!(doc["shots"], 2000);
    for (_, entry) in doc["results"].as_object().unwrap() {
        let entry = entry.as_object().unwrap();
        assert_eq!(entry.len(), 1);
        let (bits, n) = entry.iter().next().unwrap();
        assert!(bits.chars().all(|c| c == '0'));
        assert_eq!(n, 2000);
    }
}

#[test]
fn missing_metadata_fails() {
    let tmp = tempfile::tempdir().unwrap();
    let o = simulate(tmp.path(), &data("noise_null.json"), &tmp.path().join("c.json"));
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("metadata.json"));
}

fn report(counts: &[PathBuf], metadata: &[PathBuf], out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["report".to_string(), "--counts".into()];
    args.extend(counts.iter().map(|p| s(p).to_string()));
    args.push("--metadata".into());
    args.extend(metadata.iter().map(|p| s(p).to_string()));
    args.extend(["--out".to_string(), s(out).to_string()]);
    args.extend(extra.iter().map(|x| x.to_string()));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    crossbench(&refs)
}

fn runs(tmp: &Path, n: u64) -> (Vec<PathBuf>, Vec<PathBuf>) {
    let mut counts = Vec::new();
    let mut sets = Vec::new();
    for seed in 0..n {
        let bench = generate(&tmp.join("sets"), seed, &data("ibm_heron_gates.json"));
        let c = tmp.join(format!("counts-{seed}.json"));
        assert!(simulate(&bench, &data("noise_crosstalk.json"), &c).status.success());
        counts.push(c);
        sets.push(bench);
    }
    (counts, sets)
}

#[test]
fn seven_runs_report_standard_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let (counts, sets) = runs(tmp.path(), 7);
    let out = tmp.path().join("report");
    let o = report(&counts, &sets, &out, &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(doc["runs"], 7);
    assert_eq!(doc["se_available"], true);
    assert_eq!(doc["t_tests"].as_array().unwrap().len(), 24);
    let stderr_csv = fs::read_to_string(out.join("aggregate_stderr.csv")).unwrap();
    assert!(stderr_csv.lines().skip(1).any(|l| l.split(',').skip(1).any(|v| v != "0")));

    // identical bytes on a second pass
    let again = tmp.path().join("report2");
    assert!(report(&counts, &sets, &again, &[]).status.success());
    for f in ["report.json", "aggregate_mean.csv", "t_tests.csv", "crosstalk.csv", "per_driver.csv"] {
        assert_eq!(fs::read(out.join(f)).unwrap(), fs::read(again.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn single_run_flags_missing_standard_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let (counts, sets) = runs(tmp.path(), 1);
    let out = tmp.path().join("report");
    let o = report(&counts, &sets, &out, &["--baseline", "min_driver"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("standard errors unavailable"));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(doc["se_available"], false);
    assert_eq!(doc["crosstalk"]["mode"], "min_driver");
}

#[test]
fn mismatched_gate_axes_fail() {
    let tmp = tempfile::tempdir().unwrap();
    let (mut counts, mut sets) = runs(tmp.path(), 1);

    // same gates, different order
    let mut doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(data("ibm_heron_gates.json")).unwrap()).unwrap();
    doc["gates"].as_array_mut().unwrap().reverse();
    let reversed = tmp.path().join("reversed.json");
    fs::write(&reversed, doc.to_string()).unwrap();
    let bench = generate(&tmp.path().join("other"), 5, &reversed);
    let c = tmp.path().join("counts-other.json");
    assert!(simulate(&bench, &data("noise_crosstalk.json"), &c).status.success());
    counts.push(c);
    sets.push(bench);

    let o = report(&counts, &sets, &tmp.path().join("report"), &[]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("gate axes differ"));
}

#[test]
fn control_baseline_requires_counts_file() {
    let tmp = tempfile::tempdir().unwrap();
    let (counts, sets) = runs(tmp.path(), 2);
    let o = report(&counts, &sets, &tmp.path().join("r"), &["--baseline", "control"]);
    assert!(!o.status.success());

    let control = tmp.path().join("control.json");
    fs::write(
        &control,
        r#"{"set_id": "control", "shots": 4, "results": {
            "CZ_idle": {"00": 4}, "ID_idle": {"0": 3, "1": 1}, "SX_idle": {"0": 4}, "X_idle": {"0": 4}}}"#,
    )
    .unwrap();
    let out = tmp.path().join("r2");
    let control_arg = s(&control).to_string();
    let o = report(&counts, &sets, &out, &["--baseline", "control", "--control", &control_arg]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(doc["crosstalk"]["baseline"][1], 0.25);
}
