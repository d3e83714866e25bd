//! Event-by-event simulation of quantum computation with learning machines.
//!
//! A network of simple processors carries quantum amplitudes as discrete
//! events: each event is a basis-state index plus a two-component unit
//! message holding the amplitude's phase. Each gate is a processor of two
//! learning machines around a fixed orthogonal transform (the realified
//! gate unitary). The machines update their unit internal vectors by
//! cost-minimizing rule selection; the stationary event rates reproduce the
//! quantum probabilities without any state-vector arithmetic in the event
//! path.
//!
//! The crate also ships a conventional state-vector simulator
//! ([`oracle`]) used as ground truth, a line-oriented circuit text format
//! ([`circuit`]), and canned experiments ([`experiment`]) covering single
//! qubit interference, a Mach-Zehnder interferometer, a reversed CNOT, and
//! factoring 15 with the period-finding network.

pub mod circuit;
pub mod dlm;
pub mod error;
pub mod experiment;
pub mod gates;
pub mod linalg;
pub mod network;
pub mod oracle;
pub mod rng;

pub use circuit::{parse_circuit, render, CircuitDescription, GateKind, GateSpec};
pub use dlm::{Event, LearningMachine, MachineConfig, Mode, UpdateDecision};
pub use error::{Error, Result};
pub use gates::{GateProcessor, PhaseShifter};
pub use linalg::{normalize, realify, ComplexMatrix, RealMatrix, RealUnitVector};
pub use network::{build_network, constant_source, EventLog, Network};
pub use oracle::{period_distribution, shor_postprocess, PeriodDistribution, StateVector};
pub use rng::{seeded, RunRng, DEFAULT_SEED};
