//! State-vector reference simulator and the analytic period-distribution
//! formulas. This is the ground truth the event-based networks are checked
//! against; gates are applied by direct amplitude-index manipulation, not
//! via the transform matrices the processors use.

use num_complex::Complex64;

use crate::circuit::{CircuitDescription, GateKind, GateSpec};
use crate::error::{Error, Result};
use crate::gates::qubit_bit;
use crate::linalg::ComplexAmplitude;

pub const STATE_NORM_TOL: f64 = 1e-10;

/// `2^L` complex amplitudes, unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub amplitudes: Vec<ComplexAmplitude>,
    pub num_qubits: usize,
}

impl StateVector {
    /// The basis state `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        StateVector {
            amplitudes,
            num_qubits,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// |a_i|^2 for every basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// <Q_k^z> for k = 1..=L: the probability that qubit k reads 1.
    pub fn qubit_expectations(&self) -> Vec<f64> {
        let l = self.num_qubits;
        (1..=l)
            .map(|q| {
                let bit = qubit_bit(q, l);
                self.amplitudes
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (i >> bit) & 1 == 1)
                    .map(|(_, a)| a.norm_sqr())
                    .sum()
            })
            .collect()
    }

    fn apply_one_qubit(&mut self, q: usize, u: [[Complex64; 2]; 2]) {
        let bit = qubit_bit(q, self.num_qubits);
        let mask = 1usize << bit;
        for i in 0..self.amplitudes.len() {
            if i & mask != 0 {
                continue;
            }
            let j = i | mask;
            let (a0, a1) = (self.amplitudes[i], self.amplitudes[j]);
            self.amplitudes[i] = u[0][0] * a0 + u[0][1] * a1;
            self.amplitudes[j] = u[1][0] * a0 + u[1][1] * a1;
        }
    }

    /// Apply one gate in place.
    pub fn apply_gate(&mut self, g: &GateSpec) -> Result<()> {
        let l = self.num_qubits;
        for &q in &g.qubits {
            if q < 1 || q > l {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits: l,
                });
            }
        }
        let s = 1.0 / 2f64.sqrt();
        let z = |re: f64, im: f64| Complex64::new(re, im);
        match g.kind {
            GateKind::H => self.apply_one_qubit(
                g.qubits[0],
                [[z(s, 0.0), z(s, 0.0)], [z(s, 0.0), z(-s, 0.0)]],
            ),
            GateKind::X => self.apply_one_qubit(
                g.qubits[0],
                [[z(s, 0.0), z(0.0, s)], [z(0.0, s), z(s, 0.0)]],
            ),
            GateKind::Y => self.apply_one_qubit(
                g.qubits[0],
                [[z(s, 0.0), z(s, 0.0)], [z(-s, 0.0), z(s, 0.0)]],
            ),
            GateKind::R | GateKind::PhaseShift => {
                let phi = g.angle.unwrap();
                let bit = qubit_bit(g.qubits[0], l);
                let phase = z(phi.cos(), phi.sin());
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    if (i >> bit) & 1 == 1 {
                        *a *= phase;
                    }
                }
            }
            GateKind::Cnot => {
                let cbit = qubit_bit(g.qubits[0], l);
                let tmask = 1usize << qubit_bit(g.qubits[1], l);
                for i in 0..self.amplitudes.len() {
                    if (i >> cbit) & 1 == 1 && i & tmask == 0 {
                        self.amplitudes.swap(i, i | tmask);
                    }
                }
            }
            GateKind::Cphase => {
                let phi = g.angle.unwrap();
                let cbit = qubit_bit(g.qubits[0], l);
                let tbit = qubit_bit(g.qubits[1], l);
                let phase = z(phi.cos(), phi.sin());
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    if (i >> cbit) & 1 == 1 && (i >> tbit) & 1 == 1 {
                        *a *= phase;
                    }
                }
            }
            GateKind::Toffoli => {
                let c1 = qubit_bit(g.qubits[0], l);
                let c2 = qubit_bit(g.qubits[1], l);
                let tmask = 1usize << qubit_bit(g.qubits[2], l);
                for i in 0..self.amplitudes.len() {
                    if (i >> c1) & 1 == 1 && (i >> c2) & 1 == 1 && i & tmask == 0 {
                        self.amplitudes.swap(i, i | tmask);
                    }
                }
            }
        }
        Ok(())
    }

    /// Apply every gate of a circuit in order.
    pub fn apply_circuit(&mut self, c: &CircuitDescription) -> Result<()> {
        for g in &c.gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }
}

/// Run a circuit on a basis input and return the final state.
pub fn run_circuit(c: &CircuitDescription, start_index: usize) -> Result<StateVector> {
    let mut s = StateVector::basis(c.num_qubits, start_index);
    s.apply_circuit(c)?;
    Ok(s)
}

/// Probability to observe Fourier index `q` after transforming a function of
/// period `period` on `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodDistribution {
    pub probs: Vec<f64>,
    pub period: usize,
}

impl PeriodDistribution {
    /// Readout expectations of the Fourier-register qubits. The transform
    /// circuit omits terminal swaps, so qubit `k` carries bit `k-1` of the
    /// Fourier index.
    pub fn qubit_expectations(&self) -> Vec<f64> {
        let n_bits = self.probs.len().trailing_zeros() as usize;
        (0..n_bits)
            .map(|bit| {
                self.probs
                    .iter()
                    .enumerate()
                    .filter(|(q, _)| (q >> bit) & 1 == 1)
                    .map(|(_, p)| p)
                    .sum()
            })
            .collect()
    }
}

/// Closed-form p_q(M) over `q = 0..n`, with the removable singularities at
/// sin(pi q M / n) = 0 evaluated by explicit limit branches.
pub fn period_distribution(period: usize, n: usize) -> PeriodDistribution {
    assert!(period >= 1 && period <= n);
    let (m, n_f) = (period as f64, n as f64);
    let fits = n / period; // times the period fits into 0..n
    let l = fits as f64;
    let probs = (0..n)
        .map(|q| {
            let (s1, s2) = if (q * period).is_multiple_of(n) {
                (l * l, 2.0 * l + 1.0)
            } else {
                let x = std::f64::consts::PI * (q as f64) * m / n_f;
                let ratio_l = (l * x).sin() / x.sin();
                (ratio_l * ratio_l, ((2.0 * l + 1.0) * x).sin() / x.sin())
            };
            (m / (n_f * n_f)) * s1 + ((n_f - m * l) / (n_f * n_f)) * s2
        })
        .collect();
    PeriodDistribution {
        probs,
        period,
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Factor extraction: gcd(a^{M/2} ± 1, N) for an even period M.
pub fn shor_postprocess(period: usize, a: u64, n: u64) -> Result<(u64, u64)> {
    let unusable = Error::PeriodUnusable {
        period,
        a,
        n,
    };
    if !period.is_multiple_of(2) {
        return Err(unusable);
    }
    let half = pow_mod(a, period as u64 / 2, n);
    if half == n - 1 {
        return Err(unusable);
    }
    let f1 = gcd((half + n - 1) % n, n);
    let f2 = gcd(half + 1, n);
    if f1 <= 1 || f1 >= n || f2 <= 1 || f2 >= n {
        return Err(unusable);
    }
    Ok((f1.min(f2), f1.max(f2)))
}

/// The table a^j mod N for j = 0..2^n_bits.
pub fn modexp_table(a: u64, n: u64, n_bits: u32) -> Result<Vec<u64>> {
    if a >= n || gcd(a, n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    let mut out = Vec::with_capacity(1 << n_bits);
    let mut f = 1u64;
    for _ in 0..(1u64 << n_bits) {
        out.push(f);
        f = f * a % n;
    }
    Ok(out)
}

/// Period of a^j mod N, by scanning the table.
pub fn period_of(a: u64, n: u64) -> Result<usize> {
    let mut f = a % n;
    let mut j = 1usize;
    while f != 1 {
        f = f * a % n;
        j += 1;
        if j as u64 > n {
            return Err(Error::NotCoprime { a, n });
        }
    }
    Ok(j)
}
