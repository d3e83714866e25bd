//! Gate processors: front-end machine, fixed orthogonal transform, back-end
//! machine. One input event produces exactly one output event.
//!
//! Qubit convention, used everywhere: qubit 1 is the most significant bit of
//! the event-kind (basis-state) index, so qubit `q` of an `L`-qubit network
//! occupies bit `L - q`.

use num_complex::Complex64;

use crate::dlm::{Event, LearningMachine, MachineConfig, Mode};
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, RealMatrix};
use crate::rng::RunRng;

/// Bit position of 1-based qubit `q` in an `L`-qubit state index.
#[inline]
pub fn qubit_bit(q: usize, num_qubits: usize) -> usize {
    num_qubits - q
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Hadamard.
pub fn h_matrix() -> ComplexMatrix {
    let s = 1.0 / 2f64.sqrt();
    ComplexMatrix::from_rows(&[&[c(s, 0.0), c(s, 0.0)], &[c(s, 0.0), c(-s, 0.0)]])
}

/// Rotation by pi/2 about x.
pub fn x_matrix() -> ComplexMatrix {
    let s = 1.0 / 2f64.sqrt();
    ComplexMatrix::from_rows(&[&[c(s, 0.0), c(0.0, s)], &[c(0.0, s), c(s, 0.0)]])
}

/// Rotation by pi/2 about y.
pub fn y_matrix() -> ComplexMatrix {
    let s = 1.0 / 2f64.sqrt();
    ComplexMatrix::from_rows(&[&[c(s, 0.0), c(s, 0.0)], &[c(-s, 0.0), c(s, 0.0)]])
}

/// Single-qubit phase shift diag(1, e^{i phi}).
pub fn r_matrix(phi: f64) -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        &[c(1.0, 0.0), c(0.0, 0.0)],
        &[c(0.0, 0.0), c(phi.cos(), phi.sin())],
    ])
}

/// General rotation exp(i v·S) about an axis `v`.
pub fn rotation_matrix(v: [f64; 3]) -> ComplexMatrix {
    let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if len == 0.0 {
        return ComplexMatrix::identity(2);
    }
    let (cos, sin) = ((len / 2.0).cos(), (len / 2.0).sin());
    let (nx, ny, nz) = (v[0] / len, v[1] / len, v[2] / len);
    // exp(i v·S) = cos(v/2) I + i sin(v/2) (n·sigma), with S = sigma/2
    ComplexMatrix::from_rows(&[
        &[
            c(cos, sin * nz),
            c(sin * ny, sin * nx),
        ],
        &[
            c(-sin * ny, sin * nx),
            c(cos, -sin * nz),
        ],
    ])
}

/// CNOT on two qubits, control first (flips the target when the control is 1).
pub fn cnot_matrix() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    for (col, row) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[(row, col)] = c(1.0, 0.0);
    }
    m
}

/// Controlled phase shift diag(1, 1, 1, e^{i phi}), control first.
pub fn cphase_matrix(phi: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(4);
    m[(3, 3)] = c(phi.cos(), phi.sin());
    m
}

/// Toffoli: controls first, target last.
pub fn toffoli_matrix() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(8);
    for col in 0..8 {
        let row = if col >= 6 { col ^ 1 } else { col };
        m[(row, col)] = c(1.0, 0.0);
    }
    m
}

/// Tensor a small `k`-qubit unitary into the full `2^L` space. `qubits` are
/// 1-based and ordered to match the small matrix's own bit ordering (its
/// first qubit is the most significant bit of the small index).
pub fn embed(u: &ComplexMatrix, qubits: &[usize], num_qubits: usize) -> Result<ComplexMatrix> {
    let k = qubits.len();
    assert_eq!(u.dim, 1 << k);
    for (i, &q) in qubits.iter().enumerate() {
        if q < 1 || q > num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                num_qubits,
            });
        }
        if qubits[..i].contains(&q) {
            return Err(Error::DuplicateQubit { qubit: q });
        }
    }
    let n = 1usize << num_qubits;
    let bits: Vec<usize> = qubits.iter().map(|&q| qubit_bit(q, num_qubits)).collect();
    let mut out = ComplexMatrix::zeros(n);
    for idx in 0..n {
        let mut small_in = 0usize;
        for &b in &bits {
            small_in = (small_in << 1) | ((idx >> b) & 1);
        }
        for small_out in 0..(1 << k) {
            let amp = u[(small_out, small_in)];
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let mut row = idx;
            for (i, &b) in bits.iter().enumerate() {
                let bit = (small_out >> (k - 1 - i)) & 1;
                row = (row & !(1 << b)) | (bit << b);
            }
            out[(row, idx)] += amp;
        }
    }
    Ok(out)
}

/// A composite event processor: front-end machine, orthogonal transform,
/// back-end machine.
#[derive(Debug, Clone)]
pub struct GateProcessor {
    pub front: LearningMachine,
    pub transform: RealMatrix,
    pub back: LearningMachine,
    pub label: String,
}

impl GateProcessor {
    pub fn new(
        u: &ComplexMatrix,
        alpha: f64,
        mode: Mode,
        label: impl Into<String>,
        rng: &mut RunRng,
    ) -> Result<Self> {
        let transform = linalg::realify(u)?;
        let dim = transform.dim;
        // mode applies to the back-end output channel only
        let front = LearningMachine::new(MachineConfig::new(alpha, dim, Mode::Deterministic), rng);
        let back = LearningMachine::new(MachineConfig::new(alpha, dim, mode), rng);
        Ok(GateProcessor {
            front,
            transform,
            back,
            label: label.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.transform.dim
    }

    /// Process one event: learn it in the front-end, transform the learned
    /// vector, learn that in the back-end, and emit the back-end's decision.
    pub fn process(&mut self, event: &Event, rng: &mut RunRng) -> Result<Event> {
        let v = self.front.fill_missing(event)?;
        self.front.update(&v);
        let t = self.transform.mul_vec(self.front.internal());
        let d = self.back.update(&t);
        let kind = self.back.output_channel(&d, rng);
        let message = self.back.output_message(kind);
        Ok(Event::new(kind, message))
    }
}

/// Processor for a single-qubit gate in isolation (dim 4).
pub fn make_single_qubit_gate(
    u: &ComplexMatrix,
    alpha: f64,
    mode: Mode,
    label: impl Into<String>,
    rng: &mut RunRng,
) -> Result<GateProcessor> {
    assert_eq!(u.dim, 2);
    GateProcessor::new(u, alpha, mode, label, rng)
}

/// Processor for a gate embedded in the full `2^L` space (dim `2^(L+1)`).
pub fn make_multi_qubit_gate(
    u: &ComplexMatrix,
    qubits: &[usize],
    num_qubits: usize,
    alpha: f64,
    mode: Mode,
    label: impl Into<String>,
    rng: &mut RunRng,
) -> Result<GateProcessor> {
    let full = embed(u, qubits, num_qubits)?;
    GateProcessor::new(&full, alpha, mode, label, rng)
}

/// Passive phase shifter: rotates the message of events whose kind has the
/// shifter's qubit bit set. No machines, no randomness.
#[derive(Debug, Clone)]
pub struct PhaseShifter {
    pub phi: f64,
    /// Bit mask selecting the event kinds acted on.
    pub kind_mask: usize,
}

impl PhaseShifter {
    pub fn new(phi: f64, qubit: usize, num_qubits: usize) -> Self {
        PhaseShifter {
            phi,
            kind_mask: 1 << qubit_bit(qubit, num_qubits),
        }
    }

    /// Plane-rotate the message by `phi` when the kind matches.
    pub fn phase_shift(&self, event: &Event) -> Event {
        if event.kind & self.kind_mask == 0 {
            return *event;
        }
        let (cos, sin) = (self.phi.cos(), self.phi.sin());
        let [y0, y1] = event.message;
        Event::new(event.kind, [cos * y0 - sin * y1, sin * y0 + cos * y1])
    }
}
