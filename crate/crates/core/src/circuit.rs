//! Circuit-description text format.
//!
//! Line-oriented: a `QUBITS <L>` header, then one gate per line in execution
//! order. `#` starts a comment, blank lines are ignored, LF or CRLF both
//! accepted. Controls come before targets. Angles are decimal radians or
//! `pi`, `pi/<k>`, `-pi`, `-pi/<k>`.
//!
//! ```text
//! QUBITS 2
//! H 1
//! H 2
//! CNOT 1 2    # control first
//! H 1
//! H 2
//! ```

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    X,
    Y,
    R,
    Cnot,
    Cphase,
    Toffoli,
    PhaseShift,
}

impl GateKind {
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::R => "R",
            GateKind::Cnot => "CNOT",
            GateKind::Cphase => "CPHASE",
            GateKind::Toffoli => "TOFFOLI",
            GateKind::PhaseShift => "PHASESHIFT",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::H | GateKind::X | GateKind::Y | GateKind::R | GateKind::PhaseShift => 1,
            GateKind::Cnot | GateKind::Cphase => 2,
            GateKind::Toffoli => 3,
        }
    }

    pub fn takes_angle(self) -> bool {
        matches!(self, GateKind::R | GateKind::Cphase | GateKind::PhaseShift)
    }

    fn from_mnemonic(s: &str) -> Option<Self> {
        Some(match s {
            "H" => GateKind::H,
            "X" => GateKind::X,
            "Y" => GateKind::Y,
            "R" => GateKind::R,
            "CNOT" => GateKind::Cnot,
            "CPHASE" => GateKind::Cphase,
            "TOFFOLI" => GateKind::Toffoli,
            "PHASESHIFT" => GateKind::PhaseShift,
            _ => return None,
        })
    }
}

/// One gate: kind, 1-based qubit indices (controls first), optional angle.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSpec {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub angle: Option<f64>,
}

impl GateSpec {
    pub fn new(kind: GateKind, qubits: Vec<usize>, angle: Option<f64>) -> Self {
        GateSpec { kind, qubits, angle }
    }
}

/// A parsed circuit: qubit count plus gates in execution order.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitDescription {
    pub num_qubits: usize,
    pub gates: Vec<GateSpec>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_angle(tok: &str, line: usize) -> Result<f64> {
    let (sign, body) = match tok.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, tok),
    };
    if body == "pi" {
        return Ok(sign * std::f64::consts::PI);
    }
    if let Some(den) = body.strip_prefix("pi/") {
        let k: f64 = den
            .parse()
            .map_err(|_| parse_err(line, format!("malformed angle `{tok}`")))?;
        if k == 0.0 {
            return Err(parse_err(line, format!("malformed angle `{tok}`")));
        }
        return Ok(sign * std::f64::consts::PI / k);
    }
    body.parse::<f64>()
        .map(|v| sign * v)
        .map_err(|_| parse_err(line, format!("malformed angle `{tok}`")))
}

/// Parse a circuit description. Errors carry 1-based line numbers.
pub fn parse_circuit(text: &str) -> Result<CircuitDescription> {
    let mut num_qubits: Option<usize> = None;
    let mut gates = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw.split('#').next() {
            Some(s) => s.trim(),
            None => "",
        };
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap();

        if head == "QUBITS" {
            if num_qubits.is_some() {
                return Err(parse_err(line_no, "duplicate QUBITS header"));
            }
            let l: usize = toks
                .next()
                .ok_or_else(|| parse_err(line_no, "QUBITS needs a count"))?
                .parse()
                .map_err(|_| parse_err(line_no, "malformed qubit count"))?;
            if l == 0 {
                return Err(parse_err(line_no, "qubit count must be at least 1"));
            }
            if toks.next().is_some() {
                return Err(parse_err(line_no, "trailing tokens after QUBITS header"));
            }
            num_qubits = Some(l);
            continue;
        }

        let l = num_qubits.ok_or_else(|| parse_err(line_no, "missing QUBITS header"))?;
        let kind = GateKind::from_mnemonic(head)
            .ok_or_else(|| parse_err(line_no, format!("unknown mnemonic `{head}`")))?;

        let rest: Vec<&str> = toks.collect();
        let want = kind.arity() + usize::from(kind.takes_angle());
        if rest.len() != want {
            return Err(parse_err(
                line_no,
                format!(
                    "{} takes {} qubit index(es){}, got {} token(s)",
                    kind.mnemonic(),
                    kind.arity(),
                    if kind.takes_angle() { " and an angle" } else { "" },
                    rest.len()
                ),
            ));
        }

        let mut qubits = Vec::with_capacity(kind.arity());
        for tok in &rest[..kind.arity()] {
            let q: usize = tok
                .parse()
                .map_err(|_| parse_err(line_no, format!("malformed qubit index `{tok}`")))?;
            if q < 1 || q > l {
                return Err(parse_err(
                    line_no,
                    format!("qubit {q} out of range 1..={l}"),
                ));
            }
            if qubits.contains(&q) {
                return Err(parse_err(line_no, format!("duplicate qubit index {q}")));
            }
            qubits.push(q);
        }
        let angle = if kind.takes_angle() {
            Some(parse_angle(rest[kind.arity()], line_no)?)
        } else {
            None
        };
        gates.push(GateSpec::new(kind, qubits, angle));
    }

    let num_qubits = num_qubits.ok_or_else(|| parse_err(text.lines().count() + 1, "missing QUBITS header"))?;
    Ok(CircuitDescription { num_qubits, gates })
}

/// Canonical serializer; `parse_circuit(render(c)) == c` for any valid `c`.
pub fn render(c: &CircuitDescription) -> String {
    let mut out = String::new();
    out.push_str(&format!("QUBITS {}\n", c.num_qubits));
    for g in &c.gates {
        out.push_str(g.kind.mnemonic());
        for q in &g.qubits {
            out.push_str(&format!(" {q}"));
        }
        if let Some(a) = g.angle {
            // `{}` on f64 round-trips exactly
            out.push_str(&format!(" {a}"));
        }
        out.push('\n');
    }
    out
}

impl fmt::Display for CircuitDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}
