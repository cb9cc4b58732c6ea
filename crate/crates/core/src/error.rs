use thiserror::Error;

/// Errors raised across the compiler, verifier and simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("wire {wire} out of range for a {n}-qubit register")]
    WireOutOfRange { wire: usize, n: usize },

    #[error("degenerate two-qubit gate on wire {0}")]
    DegenerateTwoQubitGate(usize),

    #[error("unknown gate kind `{0}`")]
    UnknownGate(String),

    #[error("gate `{kind}` expects {expected} wire(s), got {found}")]
    GateArity {
        kind: String,
        expected: usize,
        found: usize,
    },

    #[error("circuit width must be positive")]
    EmptyRegister,

    #[error("malformed circuit JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid Pauli string `{0}`")]
    InvalidPauliString(String),

    #[error("invalid Hadamard placement: {0}")]
    InvalidPlacement(String),

    #[error("k must be even (got k = {0}); X_[n] and Z_[n] anticommute for odd n")]
    OddK(usize),

    #[error("k must be at least 2 (got k = {0})")]
    KernelTooSmall(usize),

    #[error("logical index {index} out of range 1..={k}")]
    LogicalIndex { index: usize, k: usize },

    #[error("emitter requires {expected} Hadamard count, placement has h = {h}")]
    ParityViolation { expected: &'static str, h: usize },

    #[error("Hadamard count {h} out of range 0..={k}")]
    HadamardCount { h: usize, k: usize },

    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("product carries an imaginary residual phase relative to the span")]
    ImaginaryResidual,

    #[error("inconsistent logical constraints: {0}")]
    InconsistentConstraints(String),

    #[error("no candidate completion passed verification")]
    FallbackFailed,

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("shot count must be at least 1")]
    NoShots,

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
