use thiserror::Error;

/// Errors produced while building or running event-based networks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not unitary (max |U†U - I| entry = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("cannot normalize a near-zero vector (norm = {norm:.3e})")]
    DegenerateVector { norm: f64 },

    #[error("event kind {kind} out of range for dimension {dim}")]
    KindOutOfRange { kind: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("qubit index {qubit} out of range 1..={num_qubits}")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("duplicate qubit index {qubit}")]
    DuplicateQubit { qubit: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("period {period} is unusable for a={a}, N={n} (odd period or trivial gcd)")]
    PeriodUnusable { period: usize, a: u64, n: u64 },

    #[error("a={a} and N={n} share a common factor")]
    NotCoprime { a: u64, n: u64 },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
