//! The learning machine.
//!
//! A machine holds a unit internal vector `x` of length `dim = 2^(L+1)`.
//! On each input it evaluates the `2*dim` candidate rules
//!
//! ```text
//! w[i] = s * sqrt(1 + alpha^2 (x[j]^2 - 1))   for i == j
//! w[i] = alpha * x[i]                         for i != j
//! ```
//!
//! over `j in 0..dim`, `s = ±1`, picks the one minimizing the cost
//! `C = -w·v`, and replaces `x` by the winner. Every candidate is unit norm
//! by construction, so `x` stays on the sphere. The chosen `j` determines
//! the output channel: slot pair `(2k, 2k+1)` belongs to event kind `k`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, RealUnitVector};
use crate::rng::RunRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Deterministic,
    Stochastic,
}

#[derive(Debug, Clone, Copy)]
pub struct MachineConfig {
    /// Learning-control parameter, strictly inside (0, 1).
    pub alpha: f64,
    /// Internal-vector length; a power of two, at least 4.
    pub dim: usize,
    pub mode: Mode,
}

impl MachineConfig {
    pub fn new(alpha: f64, dim: usize, mode: Mode) -> Self {
        assert!(alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
        assert!(dim >= 4 && dim.is_power_of_two(), "dim must be a power of two >= 4");
        MachineConfig { alpha, dim, mode }
    }
}

/// The rule chosen by one update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpdateDecision {
    pub j: usize,
    pub s: i8,
    pub cost: f64,
}

/// One event: a basis-state index plus a 2-component unit message carrying
/// the phase of the associated amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub kind: usize,
    pub message: [f64; 2],
}

impl Event {
    pub fn new(kind: usize, message: [f64; 2]) -> Self {
        Event { kind, message }
    }
}

#[derive(Debug, Clone)]
pub struct LearningMachine {
    pub config: MachineConfig,
    x: Vec<f64>,
    /// Times a degenerate (near-zero) pair forced the fallback message.
    pub degenerate_messages: u64,
}

impl LearningMachine {
    /// Initialize with components uniform in [-1, 1], then normalized.
    pub fn new(config: MachineConfig, rng: &mut RunRng) -> Self {
        let x = loop {
            let raw: Vec<f64> = (0..config.dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            if let Ok(u) = linalg::normalize(&raw) {
                break u.into_vec();
            }
        };
        LearningMachine {
            config,
            x,
            degenerate_messages: 0,
        }
    }

    /// Start from a given unit vector (tests, golden runs).
    pub fn with_state(config: MachineConfig, x: RealUnitVector) -> Self {
        assert_eq!(x.dim(), config.dim);
        LearningMachine {
            config,
            x: x.into_vec(),
            degenerate_messages: 0,
        }
    }

    pub fn internal(&self) -> &[f64] {
        &self.x
    }

    /// Build the full input vector for a typed event: the internal vector
    /// supplies every slot except the event's own pair, which holds the
    /// message.
    pub fn fill_missing(&self, event: &Event) -> Result<Vec<f64>> {
        let hi = 2 * event.kind + 1;
        if hi >= self.config.dim {
            return Err(Error::KindOutOfRange {
                kind: event.kind,
                dim: self.config.dim,
            });
        }
        let mut v = self.x.clone();
        v[2 * event.kind] = event.message[0];
        v[hi] = event.message[1];
        Ok(v)
    }

    /// Evaluate all `2*dim` candidates and move to the cost minimizer.
    ///
    /// Ties break to the smallest `j`, then `s = +1`.
    pub fn update(&mut self, v: &[f64]) -> UpdateDecision {
        assert_eq!(v.len(), self.config.dim);
        let alpha = self.config.alpha;
        let a2 = alpha * alpha;
        let xv = linalg::dot(&self.x, v);

        let mut best = UpdateDecision {
            j: 0,
            s: 1,
            cost: f64::INFINITY,
        };
        let mut best_head = 0.0;
        for (j, (&xj, &vj)) in self.x.iter().zip(v).enumerate() {
            let head = (1.0 + a2 * (xj * xj - 1.0)).max(0.0).sqrt();
            let rest = alpha * (xv - xj * vj);
            for s in [1i8, -1] {
                let cost = -(f64::from(s) * head * vj + rest);
                if cost < best.cost {
                    best = UpdateDecision { j, s, cost };
                    best_head = head;
                }
            }
        }

        let j = best.j;
        for (i, xi) in self.x.iter_mut().enumerate() {
            if i != j {
                *xi *= alpha;
            }
        }
        self.x[j] = f64::from(best.s) * best_head;
        best
    }

    /// Deterministic output channel: the pair the chosen rule landed in.
    pub fn output_channel_deterministic(d: &UpdateDecision) -> usize {
        d.j / 2
    }

    /// Stochastic output channel: kind `k` with probability
    /// `x[2k]^2 + x[2k+1]^2`, via cumulative intervals over `r in [0,1)`.
    pub fn output_channel_stochastic(&self, r: f64) -> usize {
        let pairs = self.config.dim / 2;
        let mut cum = 0.0;
        for k in 0..pairs {
            cum += self.x[2 * k] * self.x[2 * k] + self.x[2 * k + 1] * self.x[2 * k + 1];
            if r < cum {
                return k;
            }
        }
        pairs - 1
    }

    /// Select the output channel according to the machine's mode.
    pub fn output_channel(&self, d: &UpdateDecision, rng: &mut RunRng) -> usize {
        match self.config.mode {
            Mode::Deterministic => Self::output_channel_deterministic(d),
            Mode::Stochastic => self.output_channel_stochastic(rng.gen::<f64>()),
        }
    }

    /// The outgoing message for `kind`: the stored pair, normalized. A
    /// degenerate pair (cold start) falls back to (1, 0) and is counted.
    pub fn output_message(&mut self, kind: usize) -> [f64; 2] {
        let pair = [self.x[2 * kind], self.x[2 * kind + 1]];
        match linalg::normalize(&pair) {
            Ok(u) => [u.as_slice()[0], u.as_slice()[1]],
            Err(_) => {
                self.degenerate_messages += 1;
                [1.0, 0.0]
            }
        }
    }
}
