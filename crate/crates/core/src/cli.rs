//! The `crossbench` command line: `generate`, `simulate` and `report`.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{control_baseline, series_from_counts, BaselineMode, CountsDocument, Report};
use crate::circuit::{build_benchmark_set, read_set_dir, write_set_dir, BenchmarkConfig, PrepState};
use crate::device::{load_gate_set, load_topology};
use crate::noise::{simulate_set, NoiseModel};
use crate::placement::Thresholds;

#[derive(Debug, Parser)]
#[command(name = "crossbench", version, about = "Crosstalk benchmark generation and analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one OpenQASM 3 circuit per ordered gate pair, plus metadata.json.
    Generate(GenerateArgs),
    /// Sample counts for a generated set from a parametric noise model.
    Simulate(SimulateArgs),
    /// Aggregate one or more runs into a JSON report and CSV tables.
    Report(ReportArgs),
}

#[derive(Debug, clap::Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub topology: PathBuf,
    #[arg(long)]
    pub gates: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub driver_threshold: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub spectator_threshold: Option<i64>,
    /// Stop after the two threshold-bounded passes.
    #[arg(long)]
    pub skip_fill_passes: bool,
    #[arg(long, env = "CROSSBENCH_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated preparation states to draw from.
    #[arg(long, value_delimiter = ',', default_value = "Z0,Z1,Xp,Xm,Yp,Ym")]
    pub states: Vec<PrepState>,
    #[arg(long, default_value_t = 10_000)]
    pub shots: u64,
    /// Directory name for the set; defaults to `seed-<seed>`.
    #[arg(long)]
    pub set_id: Option<String>,
    /// Parent directory; the set is written to `<out>/<set_id>/`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct SimulateArgs {
    /// Set directory written by `generate`.
    #[arg(long)]
    pub bench: PathBuf,
    #[arg(long)]
    pub noise_model: PathBuf,
    /// Defaults to the shot count recorded in the metadata.
    #[arg(long)]
    pub shots: Option<u64>,
    /// Counts file to write.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum BaselineArg {
    IdDriver,
    MinDriver,
    Control,
}

#[derive(Debug, clap::Args)]
pub struct ReportArgs {
    /// Counts files, one per run.
    #[arg(long, required = true, num_args = 1..)]
    pub counts: Vec<PathBuf>,
    /// Set directories or metadata.json files; matched to counts by set_id.
    #[arg(long, required = true, num_args = 1..)]
    pub metadata: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = BaselineArg::IdDriver)]
    pub baseline: BaselineArg,
    /// Control-batch counts for `--baseline control`.
    #[arg(long)]
    pub control: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_counts(path: &Path) -> Result<CountsDocument> {
    CountsDocument::from_json(&read(path)?).with_context(|| format!("invalid counts file {}", path.display()))
}

pub fn generate(args: &GenerateArgs) -> Result<PathBuf> {
    let topology = load_topology(&read(&args.topology)?).with_context(|| format!("invalid topology {}", args.topology.display()))?;
    let gate_set = load_gate_set(&read(&args.gates)?).with_context(|| format!("invalid gate set {}", args.gates.display()))?;
    let overrides = Thresholds::try_new(args.driver_threshold.unwrap_or(0), args.spectator_threshold.unwrap_or(0))?;
    let config = BenchmarkConfig {
        delta: args.delta,
        shots: args.shots,
        prep_states: args.states.clone(),
        seed: args.seed,
        fill_passes: !args.skip_fill_passes,
        driver_threshold: args.driver_threshold.map(|_| overrides.driver),
        spectator_threshold: args.spectator_threshold.map(|_| overrides.spectator),
        set_id: args.set_id.clone(),
    };
    let set = build_benchmark_set(&topology, &gate_set, &config)?;
    let dir = write_set_dir(&set, &args.out)?;

    println!("driver depth: {}", set.driver_depth());
    for c in &set.circuits {
        println!(
            "{:<12} utilization {:.3}  drivers {:>3}  spectators {:>3}  d_s {:>4}  delay {} ns",
            c.name(),
            c.assignment.utilization(),
            c.assignment.driver_qubits().len(),
            c.spectator_count(),
            c.spectator_depth,
            c.delay.ns.round()
        );
    }
    println!("wrote {}", dir.display());
    Ok(dir)
}

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    let meta = read_set_dir(&args.bench)?;
    let set = meta.to_benchmark_set()?;
    let model = NoiseModel::from_json(&read(&args.noise_model)?)
        .with_context(|| format!("invalid noise model {}", args.noise_model.display()))?;
    let shots = args.shots.unwrap_or(set.config.shots);
    if shots == 0 {
        bail!("shots must be at least 1");
    }
    let counts = simulate_set(&set, &model, shots)?;
    if let Some(parent) = args.out.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("cannot create {}", parent.display()))?;
    }
    fs::write(&args.out, counts.to_json()).with_context(|| format!("cannot write {}", args.out.display()))?;
    println!("wrote {} circuits x {shots} shots to {}", counts.results.len(), args.out.display());
    Ok(())
}

pub fn report(args: &ReportArgs) -> Result<Report> {
    let counts = args.counts.iter().map(|p| read_counts(p)).collect::<Result<Vec<_>>>()?;
    let metadata = args.metadata.iter().map(|p| read_set_dir(p)).collect::<Result<Vec<_>, _>>()?;
    let series = series_from_counts(&counts, &metadata)?;
    let baseline = match (args.baseline, &args.control) {
        (BaselineArg::IdDriver, _) => BaselineMode::IdDriver,
        (BaselineArg::MinDriver, _) => BaselineMode::MinDriver,
        (BaselineArg::Control, Some(path)) => BaselineMode::Control(control_baseline(&read_counts(path)?, series.gates())?),
        (BaselineArg::Control, None) => bail!("--baseline control requires --control <counts file>"),
    };
    let report = Report::build(&series, &baseline)?;
    report.write_dir(&args.out)?;
    println!("runs: {}{}", report.runs, if report.se_available { "" } else { " (standard errors unavailable)" });
    for d in &report.per_driver {
        println!("{:<8} mean {:.6}  se {:.6}", d.driver, d.mean, d.std_err);
    }
    println!("wrote {}", args.out.display());
    Ok(report)
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(a) => generate(&a).map(|_| ()),
        Command::Simulate(a) => simulate(&a),
        Command::Report(a) => report(&a).map(|_| ()),
    }
}
