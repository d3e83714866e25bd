//! `dlmq`: run event-based gate-network simulations and write CSV.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use dlmq_core::circuit::GateKind;
use dlmq_core::dlm::Mode;
use dlmq_core::experiment::{self, ExperimentConfig, ExperimentResult};
use dlmq_core::network::{self, Stage};
use dlmq_core::{oracle, rng};

/// Invalid option values are usage errors (exit 1), unlike failures while
/// running (exit 2).
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

macro_rules! usage {
    ($($arg:tt)*) => {
        return Err(UsageError(format!($($arg)*)).into())
    };
}

#[derive(Parser)]
#[command(name = "dlmq", version, about = "Event-based simulation of quantum gate networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Deterministic,
    Stochastic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Deterministic => Mode::Deterministic,
            ModeArg::Stochastic => Mode::Stochastic,
        }
    }
}

#[derive(Args)]
struct RunOpts {
    /// Learning parameter, 0 < alpha < 1
    #[arg(long, default_value_t = 0.99)]
    alpha: f64,
    /// Events per sweep point
    #[arg(long, default_value_t = 10_000)]
    events: u64,
    /// Fraction of events discarded as warm-up before counting
    #[arg(long, default_value_t = 0.5)]
    discard: f64,
    /// RNG seed; overrides the DLMQ_SEED environment variable
    #[arg(long)]
    seed: Option<u64>,
    /// Output-channel selection
    #[arg(long, value_enum, default_value_t = ModeArg::Deterministic)]
    mode: ModeArg,
    /// Output CSV path (defaults to <experiment>_<param>_<alpha>_<mode>.csv)
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunOpts {
    fn config(&self, name: &str) -> Result<ExperimentConfig> {
        if !(0.0 < self.alpha && self.alpha < 1.0) {
            usage!("--alpha must be strictly between 0 and 1");
        }
        if !(0.0 < self.discard && self.discard < 1.0) {
            usage!("--discard must be strictly between 0 and 1");
        }
        if self.events < 100 {
            usage!("--events must be at least 100");
        }
        let mut cfg = ExperimentConfig::new(name);
        cfg.alpha = self.alpha;
        cfg.events_per_point = self.events;
        cfg.discard_fraction = self.discard;
        cfg.seed = self.resolve_seed()?;
        cfg.mode = self.mode.into();
        Ok(cfg)
    }

    fn resolve_seed(&self) -> Result<u64> {
        if let Some(s) = self.seed {
            return Ok(s);
        }
        match std::env::var("DLMQ_SEED") {
            Ok(v) => v
                .parse()
                .with_context(|| format!("DLMQ_SEED is not a valid seed: {v:?}")),
            Err(_) => Ok(rng::DEFAULT_SEED),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a circuit file, optionally sweeping its phase-shift angle
    RunCircuit {
        /// Circuit description file
        circuit: PathBuf,
        /// Sweep spec "PHASESHIFT:<start_deg>:<end_deg>:<step_deg>"
        #[arg(long)]
        sweep: Option<String>,
        /// Basis-state index fed into the network
        #[arg(long, default_value_t = 0)]
        input: usize,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Single-gate interference sweep with random input phases
    Hadamard {
        /// Probability of a type-0 input event
        #[arg(long, default_value_t = 0.5)]
        p0: f64,
        /// Number of sweep points
        #[arg(long, default_value_t = 36)]
        points: usize,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Mach-Zehnder interferometer phase sweep
    Mzi {
        /// Sweep step in degrees
        #[arg(long, default_value_t = 10.0)]
        step: f64,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// CNOT with interchanged control and target, one run per basis input
    CnotReversed {
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Factor 15 with the order-finding network
    Shor {
        /// Base for modular exponentiation (7 or 11)
        #[arg(long)]
        a: u64,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Run a circuit file through the state-vector oracle and print
    /// probabilities and qubit expectations
    Oracle {
        /// Circuit description file
        circuit: PathBuf,
        /// Basis-state index of the initial state
        #[arg(long, default_value_t = 0)]
        input: usize,
    },
}

fn parse_sweep(spec: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let err = || format!("invalid sweep spec {spec:?}, expected PHASESHIFT:start:end:step");
    if parts.len() != 4 || !parts[0].eq_ignore_ascii_case("PHASESHIFT") {
        usage!("{}", err());
    }
    let nums: Vec<f64> = parts[1..]
        .iter()
        .map(|p| p.parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .with_context(err)?;
    if nums[2] <= 0.0 {
        usage!("sweep step must be positive in {spec:?}");
    }
    Ok((nums[0], nums[1], nums[2]))
}

fn read_circuit(path: &PathBuf) -> Result<dlmq_core::circuit::CircuitDescription> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read circuit file {}", path.display()))?;
    Ok(dlmq_core::parse_circuit(&text)?)
}

fn run_circuit_cmd(
    circuit_path: &PathBuf,
    sweep: Option<&str>,
    input: usize,
    cfg: &ExperimentConfig,
) -> Result<ExperimentResult> {
    let circuit = read_circuit(circuit_path)?;
    let num_kinds = 1usize << circuit.num_qubits;
    if input >= num_kinds {
        usage!("--input {input} out of range for {} qubits", circuit.num_qubits);
    }
    let mut columns = vec!["phase_deg".to_string()];
    columns.extend((0..num_kinds).map(|k| format!("f{k}")));
    columns.extend((0..num_kinds).map(|k| format!("p{k}")));
    let mut result = ExperimentResult {
        name: cfg.name.clone(),
        columns,
        rows: Vec::new(),
    };

    let sweep = sweep.map(parse_sweep).transpose()?;
    let mut net = network::build_network(&circuit, cfg.alpha, cfg.mode, cfg.seed)?;
    let warmup = (cfg.events_per_point as f64 * cfg.discard_fraction) as u64;
    let mut point = |net: &mut network::Network, deg: f64, c: &dlmq_core::circuit::CircuitDescription| -> Result<()> {
        net.run(network::constant_source(input), warmup)?;
        let log = net.run(network::constant_source(input), cfg.events_per_point - warmup)?;
        let mut row = vec![deg];
        row.extend(log.output_fractions());
        row.extend(oracle::run_circuit(c, input)?.probabilities());
        result.rows.push(row);
        Ok(())
    };

    match sweep {
        None => point(&mut net, 0.0, &circuit)?,
        Some((start, end, step)) => {
            let mut deg = start;
            while deg <= end + 1e-9 {
                let phi = deg.to_radians();
                let mut c = circuit.clone();
                for g in &mut c.gates {
                    if g.kind == GateKind::PhaseShift {
                        g.angle = Some(phi);
                    }
                }
                for stage in &mut net.stages {
                    if let Stage::Shift(ps) = stage {
                        ps.phi = phi;
                    }
                }
                point(&mut net, deg, &c)?;
                deg += step;
            }
        }
    }
    Ok(result)
}

fn write_result(result: &ExperimentResult, cfg: &ExperimentConfig, param: &str, out: &Option<PathBuf>) -> Result<()> {
    let path = out
        .clone()
        .unwrap_or_else(|| PathBuf::from(cfg.default_file_name(param)));
    experiment::emit_csv(result, &path)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::RunCircuit {
            circuit,
            sweep,
            input,
            opts,
        } => {
            let cfg = opts.config("circuit")?;
            let result = run_circuit_cmd(&circuit, sweep.as_deref(), input, &cfg)?;
            write_result(&result, &cfg, "sweep", &opts.out)
        }
        Command::Hadamard { p0, points, opts } => {
            if !(0.0..=1.0).contains(&p0) {
                usage!("--p0 must be in [0, 1]");
            }
            let cfg = opts.config("hadamard")?;
            let result = experiment::run_hadamard(&cfg, p0, points)?;
            write_result(&result, &cfg, &format!("{p0}"), &opts.out)
        }
        Command::Mzi { step, opts } => {
            if step <= 0.0 {
                usage!("--step must be positive");
            }
            let cfg = opts.config("mzi")?;
            let result = experiment::run_mzi(&cfg, step)?;
            write_result(&result, &cfg, "phi", &opts.out)
        }
        Command::CnotReversed { opts } => {
            let cfg = opts.config("cnot_reversed")?;
            let result = experiment::run_reversed_cnot(&cfg)?;
            write_result(&result, &cfg, "basis", &opts.out)
        }
        Command::Shor { a, opts } => {
            if a != 7 && a != 11 {
                usage!("--a must be 7 or 11");
            }
            let cfg = opts.config("shor")?;
            let run = experiment::run_shor(&cfg, a)?;
            println!(
                "inferred period {}; factors {} x {}",
                run.inferred_period, run.factors.0, run.factors.1
            );
            write_result(&run.result, &cfg, &format!("{a}"), &opts.out)
        }
        Command::Oracle { circuit, input } => {
            let c = read_circuit(&circuit)?;
            if input >= (1usize << c.num_qubits) {
                usage!("--input {input} out of range for {} qubits", c.num_qubits);
            }
            let state = oracle::run_circuit(&c, input)?;
            for (k, p) in state.probabilities().iter().enumerate() {
                println!("p[{k}] = {p:.6}");
            }
            for (q, e) in state.qubit_expectations().iter().enumerate() {
                println!("<Q{}> = {e:.6}", q + 1);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = if e.downcast_ref::<UsageError>().is_some() { 1 } else { 2 };
            ExitCode::from(code)
        }
    }
}
