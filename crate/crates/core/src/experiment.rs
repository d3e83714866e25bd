//! Canned experiments: interference sweeps, the reversed-CNOT table, and
//! the factoring runs, each with CSV emission.

use std::f64::consts::PI;
use std::io::Write;

use rand::Rng;

use crate::circuit::{parse_circuit, CircuitDescription};
use crate::dlm::{Event, Mode};
use crate::error::{Error, Result};
use crate::gates::{self, qubit_bit};
use crate::network::{self, constant_source, Stage};
use crate::oracle;
use crate::rng::{self, RunRng};

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub name: String,
    pub alpha: f64,
    pub events_per_point: u64,
    pub discard_fraction: f64,
    pub seed: u64,
    pub mode: Mode,
}

impl ExperimentConfig {
    pub fn new(name: impl Into<String>) -> Self {
        ExperimentConfig {
            name: name.into(),
            alpha: 0.99,
            events_per_point: 10_000,
            discard_fraction: 0.5,
            seed: rng::DEFAULT_SEED,
            mode: Mode::Deterministic,
        }
    }

    fn validate(&self) {
        assert!(self.discard_fraction > 0.0 && self.discard_fraction < 1.0);
        assert!(self.events_per_point >= 100);
    }

    fn warmup(&self) -> u64 {
        (self.events_per_point as f64 * self.discard_fraction) as u64
    }

    fn mode_name(&self) -> &'static str {
        match self.mode {
            Mode::Deterministic => "dlm",
            Mode::Stochastic => "slm",
        }
    }

    /// Default CSV file name for this experiment.
    pub fn default_file_name(&self, param: &str) -> String {
        format!("{}_{}_{}_{}.csv", self.name, param, self.alpha, self.mode_name())
    }
}

/// Tabular experiment output: named columns, one row per sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ExperimentResult {
    fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        ExperimentResult {
            name: name.into(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }
}

/// Write a result as CSV: header row, six-decimal values.
pub fn emit_csv(result: &ExperimentResult, path: &std::path::Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let mut f = std::fs::File::create(path).map_err(io_err)?;
    let body = csv_string(result);
    f.write_all(body.as_bytes()).map_err(io_err)
}

pub fn csv_string(result: &ExperimentResult) -> String {
    let mut out = result.columns.join(",");
    out.push('\n');
    for row in &result.rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.6}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Interference sweep: a single Hadamard processor fed 0/1 events with probability
/// (p0, 1-p0) and random phases; output 0-fraction vs phi = psi0 - psi1.
pub fn run_hadamard(config: &ExperimentConfig, p0: f64, points: usize) -> Result<ExperimentResult> {
    config.validate();
    assert!((0.0..=1.0).contains(&p0));
    let mut rng = rng::seeded(config.seed);
    let mut proc = gates::make_single_qubit_gate(
        &gates::h_matrix(),
        config.alpha,
        config.mode,
        "H",
        &mut rng,
    )?;
    let mut result = ExperimentResult::new(
        &config.name,
        &["phi_deg", "n0_frac", "oracle_b0"],
    );
    for _ in 0..points {
        let psi0 = rng.gen::<f64>() * 2.0 * PI;
        let psi1 = rng.gen::<f64>() * 2.0 * PI;
        let draw = |r: &mut RunRng| {
            if r.gen::<f64>() < p0 {
                Event::new(0, [psi0.cos(), psi0.sin()])
            } else {
                Event::new(1, [psi1.cos(), psi1.sin()])
            }
        };
        let mut n0 = 0u64;
        let counted = config.events_per_point;
        for _ in 0..counted {
            let e = draw(&mut rng);
            if proc.process(&e, &mut rng)?.kind == 0 {
                n0 += 1;
            }
        }
        let phi = psi0 - psi1;
        let oracle_b0 = (1.0 + 2.0 * (p0 * (1.0 - p0)).sqrt() * phi.cos()) / 2.0;
        result
            .rows
            .push(vec![phi.to_degrees(), n0 as f64 / counted as f64, oracle_b0]);
    }
    Ok(result)
}

fn mzi_circuit(phi: f64) -> CircuitDescription {
    parse_circuit(&format!("QUBITS 1\nX 1\nPHASESHIFT 1 {phi}\nX 1")).unwrap()
}

/// Mach-Zehnder sweep. Records N0/(N0+N1) after the first beam
/// splitter and N2/(N2+N3), N3/(N2+N3) at the outputs, per phase step.
pub fn run_mzi(config: &ExperimentConfig, step_deg: f64) -> Result<ExperimentResult> {
    config.validate();
    let mut net = network::build_network(&mzi_circuit(0.0), config.alpha, config.mode, config.seed)?;
    let mut result = ExperimentResult::new(
        &config.name,
        &["phi_deg", "n0_frac", "n2_frac", "n3_frac", "oracle_sin2", "oracle_cos2"],
    );
    let psi0 = net.rng_mut().gen::<f64>() * 2.0 * PI;
    let source = move |_: &mut RunRng| Event::new(0, [psi0.cos(), psi0.sin()]);
    let mut phi_deg = 0.0f64;
    while phi_deg <= 360.0 {
        let phi = phi_deg.to_radians();
        match &mut net.stages[1] {
            Stage::Shift(ps) => ps.phi = phi,
            Stage::Gate(_) => unreachable!(),
        }
        let log = net.run(source, config.events_per_point)?;
        let first = &log.stage_counts[0];
        let last = log.output_counts();
        let n01 = (first[0] + first[1]) as f64;
        let n23 = (last[0] + last[1]) as f64;
        result.rows.push(vec![
            phi_deg,
            first[0] as f64 / n01,
            last[0] as f64 / n23,
            last[1] as f64 / n23,
            (phi / 2.0).sin().powi(2),
            (phi / 2.0).cos().powi(2),
        ]);
        phi_deg += step_deg;
    }
    Ok(result)
}

pub fn reversed_cnot_circuit() -> CircuitDescription {
    parse_circuit("QUBITS 2\nH 1\nH 2\nCNOT 1 2\nH 1\nH 2").unwrap()
}

/// The reversed-CNOT network on each basis input. One row per
/// input: (q1, q2, f0..f3), kinds indexed with qubit 1 as the high bit.
pub fn run_reversed_cnot(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate();
    let circuit = reversed_cnot_circuit();
    let mut result = ExperimentResult::new(
        &config.name,
        &["q1", "q2", "f0", "f1", "f2", "f3"],
    );
    for input in 0..4usize {
        let mut net = network::build_network(
            &circuit,
            config.alpha,
            config.mode,
            config.seed.wrapping_add(input as u64),
        )?;
        net.run(constant_source(input), config.warmup())?;
        let log = net.run(
            constant_source(input),
            config.events_per_point - config.warmup(),
        )?;
        let f = log.output_fractions();
        let mut row = vec![(input >> 1) as f64, (input & 1) as f64];
        row.extend(f);
        result.rows.push(row);
    }
    Ok(result)
}

/// The order-finding network for a = 7 or a = 11: Hadamards on the three Fourier
/// qubits, the modular-exponentiation stage, then the three-qubit Fourier
/// transform (controlled phases pi/2 and pi/4, no terminal swaps).
pub fn shor_circuit(a: u64) -> Result<CircuitDescription> {
    let modexp = match a {
        // x11 mod 15, exact on the reachable f register
        11 => "CNOT 3 4\nCNOT 3 6\n",
        // x7 mod 15 (two CNOTs), then x4 mod 15 as two Fredkins,
        // each decomposed CNOT/Toffoli/CNOT
        7 => "CNOT 3 5\nCNOT 3 6\n\
              CNOT 6 4\nTOFFOLI 2 4 6\nCNOT 6 4\n\
              CNOT 7 5\nTOFFOLI 2 5 7\nCNOT 7 5\n",
        _ => {
            return Err(Error::Parse {
                line: 0,
                message: format!("no modular-exponentiation network for a={a}"),
            })
        }
    };
    let text = format!(
        "QUBITS 7\nH 1\nH 2\nH 3\n{modexp}\
         H 1\nCPHASE 2 1 pi/2\nCPHASE 3 1 pi/4\nH 2\nCPHASE 3 2 pi/2\nH 3\n"
    );
    parse_circuit(&text)
}

/// Initial state of the seven qubits: all |0> except qubit 7.
pub const SHOR_INPUT_INDEX: usize = 1;

#[derive(Debug, Clone)]
pub struct ShorRun {
    pub result: ExperimentResult,
    pub inferred_period: usize,
    pub factors: (u64, u64),
}

const PERIOD_TRIPLES: [(usize, [f64; 3]); 4] = [
    (1, [0.0, 0.0, 0.0]),
    (2, [0.0, 0.0, 0.5]),
    (3, [0.5, 0.375, 0.34375]),
    (4, [0.0, 0.5, 0.5]),
];

fn nearest_period(q: [f64; 3]) -> usize {
    PERIOD_TRIPLES
        .iter()
        .min_by(|(_, a), (_, b)| {
            let da: f64 = (0..3).map(|i| (q[i] - a[i]).powi(2)).sum();
            let db: f64 = (0..3).map(|i| (q[i] - b[i]).powi(2)).sum();
            da.partial_cmp(&db).unwrap()
        })
        .map(|(m, _)| *m)
        .unwrap()
}

/// Run the factoring network event by event, estimating
/// (Q1, Q2, Q3) over windows of 100 output events, then infer the period
/// from the post-warm-up average and extract the factors.
pub fn run_shor(config: &ExperimentConfig, a: u64) -> Result<ShorRun> {
    config.validate();
    let circuit = shor_circuit(a)?;
    let oracle_q = oracle::run_circuit(&circuit, SHOR_INPUT_INDEX)?.qubit_expectations();
    let mut net = network::build_network(&circuit, config.alpha, config.mode, config.seed)?;

    let mut result = ExperimentResult::new(
        &config.name,
        &["window_index", "q1", "q2", "q3", "oracle_q1", "oracle_q2", "oracle_q3"],
    );
    const WINDOW: u64 = 100;
    let windows = config.events_per_point / WINDOW;
    let warm_windows = (windows as f64 * config.discard_fraction) as u64;
    let mut post_sum = [0.0f64; 3];
    for w in 0..windows {
        let mut bits = [0u64; 3];
        for _ in 0..WINDOW {
            let out = net.process(&Event::new(SHOR_INPUT_INDEX, [1.0, 0.0]))?;
            for (q, b) in bits.iter_mut().enumerate() {
                *b += ((out.kind >> qubit_bit(q + 1, 7)) & 1) as u64;
            }
        }
        let q: Vec<f64> = bits.iter().map(|&b| b as f64 / WINDOW as f64).collect();
        if w >= warm_windows {
            for i in 0..3 {
                post_sum[i] += q[i];
            }
        }
        result.rows.push(vec![
            w as f64,
            q[0],
            q[1],
            q[2],
            oracle_q[0],
            oracle_q[1],
            oracle_q[2],
        ]);
    }
    let n = (windows - warm_windows) as f64;
    let mean = [post_sum[0] / n, post_sum[1] / n, post_sum[2] / n];
    let inferred_period = nearest_period(mean);
    let factors = oracle::shor_postprocess(inferred_period, a, 15)?;
    Ok(ShorRun {
        result,
        inferred_period,
        factors,
    })
}
