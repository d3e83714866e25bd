//! Wiring gate processors into an executable event pipeline.
//!
//! A network processes strictly one event at a time: each input event
//! traverses every stage in listed order before the next input is drawn.

use crate::circuit::{CircuitDescription, GateKind, GateSpec};
use crate::dlm::{Event, Mode};
use crate::error::Result;
use crate::gates::{self, GateProcessor, PhaseShifter};
use crate::linalg::ComplexMatrix;
use crate::rng::{self, RunRng};

#[derive(Debug, Clone)]
pub enum Stage {
    Gate(GateProcessor),
    Shift(PhaseShifter),
}

/// Per-run counters: input kind counts, output kind counts after every
/// stage, and (opt-in, bounded) the most recent output events.
#[derive(Debug, Clone, PartialEq)]
pub struct EventLog {
    pub input_counts: Vec<u64>,
    pub stage_counts: Vec<Vec<u64>>,
    pub recent_outputs: Vec<Event>,
}

impl EventLog {
    fn new(num_kinds: usize, num_stages: usize) -> Self {
        EventLog {
            input_counts: vec![0; num_kinds],
            stage_counts: vec![vec![0; num_kinds]; num_stages],
            recent_outputs: Vec::new(),
        }
    }

    /// Output kind counts of the final stage (the network's outputs).
    pub fn output_counts(&self) -> &[u64] {
        self.stage_counts.last().unwrap_or(&self.input_counts)
    }

    pub fn total(&self) -> u64 {
        self.input_counts.iter().sum()
    }

    /// Output frequencies, normalized.
    pub fn output_fractions(&self) -> Vec<f64> {
        let n = self.total() as f64;
        self.output_counts().iter().map(|&c| c as f64 / n).collect()
    }
}

/// A sequence of stages with the run's random stream.
#[derive(Debug)]
pub struct Network {
    pub stages: Vec<Stage>,
    pub num_qubits: usize,
    pub mode: Mode,
    /// Cap on events kept in `EventLog::recent_outputs`; 0 disables tracing.
    pub trace_limit: usize,
    rng: RunRng,
}

fn gate_unitary(g: &GateSpec) -> ComplexMatrix {
    match g.kind {
        GateKind::H => gates::h_matrix(),
        GateKind::X => gates::x_matrix(),
        GateKind::Y => gates::y_matrix(),
        GateKind::R => gates::r_matrix(g.angle.unwrap()),
        GateKind::Cnot => gates::cnot_matrix(),
        GateKind::Cphase => gates::cphase_matrix(g.angle.unwrap()),
        GateKind::Toffoli => gates::toffoli_matrix(),
        GateKind::PhaseShift => unreachable!("passive stage"),
    }
}

/// Build one processor (or passive shifter) per gate, all embedded in the
/// full `2^L` space. `mode` selects the back-end output style only.
pub fn build_network(
    c: &CircuitDescription,
    alpha: f64,
    mode: Mode,
    seed: u64,
) -> Result<Network> {
    let mut rng = rng::seeded(seed);
    let mut stages = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        let stage = match g.kind {
            GateKind::PhaseShift => Stage::Shift(PhaseShifter::new(
                g.angle.unwrap(),
                g.qubits[0],
                c.num_qubits,
            )),
            _ => {
                let label = format!(
                    "{} {:?}",
                    g.kind.mnemonic(),
                    g.qubits
                );
                Stage::Gate(gates::make_multi_qubit_gate(
                    &gate_unitary(g),
                    &g.qubits,
                    c.num_qubits,
                    alpha,
                    mode,
                    label,
                    &mut rng,
                )?)
            }
        };
        stages.push(stage);
    }
    Ok(Network {
        stages,
        num_qubits: c.num_qubits,
        mode,
        trace_limit: 0,
        rng,
    })
}

impl Network {
    pub fn num_kinds(&self) -> usize {
        1 << self.num_qubits
    }

    /// Push one event through every stage in order.
    pub fn process(&mut self, event: &Event) -> Result<Event> {
        let mut e = *event;
        for stage in &mut self.stages {
            e = match stage {
                Stage::Gate(p) => p.process(&e, &mut self.rng)?,
                Stage::Shift(ps) => ps.phase_shift(&e),
            };
        }
        Ok(e)
    }

    /// Like [`Network::process`] but records per-stage counts into `log`.
    fn process_logged(&mut self, event: &Event, log: &mut EventLog) -> Result<Event> {
        log.input_counts[event.kind] += 1;
        let mut e = *event;
        for (stage, counts) in self.stages.iter_mut().zip(&mut log.stage_counts) {
            e = match stage {
                Stage::Gate(p) => p.process(&e, &mut self.rng)?,
                Stage::Shift(ps) => ps.phase_shift(&e),
            };
            counts[e.kind] += 1;
        }
        Ok(e)
    }

    /// Draw `count` events from `source` and run them through the network
    /// strictly sequentially.
    pub fn run(
        &mut self,
        mut source: impl FnMut(&mut RunRng) -> Event,
        count: u64,
    ) -> Result<EventLog> {
        let mut log = EventLog::new(self.num_kinds(), self.stages.len());
        for _ in 0..count {
            let e = source(&mut self.rng);
            let out = self.process_logged(&e, &mut log)?;
            if self.trace_limit > 0 {
                if log.recent_outputs.len() == self.trace_limit {
                    log.recent_outputs.remove(0);
                }
                log.recent_outputs.push(out);
            }
        }
        Ok(log)
    }

    /// Borrow the run generator (input sources that live outside `run`).
    pub fn rng_mut(&mut self) -> &mut RunRng {
        &mut self.rng
    }
}

/// Source emitting a constant kind with message (1, 0): a fixed basis state
/// with no phase freedom.
pub fn constant_source(kind: usize) -> impl FnMut(&mut RunRng) -> Event {
    move |_| Event::new(kind, [1.0, 0.0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;

    #[test]
    fn structural_counts() {
        let c = parse_circuit("QUBITS 1\nX 1\nPHASESHIFT 1 pi/3\nX 1").unwrap();
        let n = build_network(&c, 0.99, Mode::Deterministic, 1).unwrap();
        assert_eq!(n.stages.len(), 3);
        let dims: Vec<usize> = n
            .stages
            .iter()
            .filter_map(|s| match s {
                Stage::Gate(p) => Some(p.dim()),
                Stage::Shift(_) => None,
            })
            .collect();
        assert_eq!(dims, vec![4, 4]);

        let c = parse_circuit("QUBITS 2\nH 1\nH 2\nCNOT 1 2\nH 1\nH 2").unwrap();
        let n = build_network(&c, 0.99, Mode::Deterministic, 1).unwrap();
        assert_eq!(n.stages.len(), 5);
        for s in &n.stages {
            match s {
                Stage::Gate(p) => assert_eq!(p.dim(), 8),
                Stage::Shift(_) => panic!("unexpected passive stage"),
            }
        }
    }

    #[test]
    fn event_conservation_and_identity_network() {
        let c = parse_circuit("QUBITS 1\nR 1 0").unwrap();
        let mut n = build_network(&c, 0.99, Mode::Deterministic, 9).unwrap();
        let log = n.run(constant_source(0), 500).unwrap();
        assert_eq!(log.total(), 500);
        assert_eq!(log.output_counts().iter().sum::<u64>(), 500);
    }

    #[test]
    fn seeded_rerun_is_identical() {
        let c = parse_circuit("QUBITS 1\nH 1").unwrap();
        let mut logs = Vec::new();
        for _ in 0..2 {
            let mut n = build_network(&c, 0.99, Mode::Stochastic, 42).unwrap();
            n.trace_limit = 4096;
            logs.push(n.run(constant_source(0), 2000).unwrap());
        }
        assert_eq!(logs[0], logs[1]);
    }

    #[test]
    fn mzi_interference_at_pi() {
        // X . R(pi) . X fed kind-0 events: output kind-0 fraction -> sin^2(pi/2) = 1.
        let c = parse_circuit("QUBITS 1\nX 1\nPHASESHIFT 1 pi\nX 1").unwrap();
        let mut n = build_network(&c, 0.99, Mode::Deterministic, 21).unwrap();
        n.run(constant_source(0), 5000).unwrap();
        let log = n.run(constant_source(0), 5000).unwrap();
        let f = log.output_fractions();
        assert!((f[0] - 1.0).abs() < 0.02, "f0={}", f[0]);
    }
}
