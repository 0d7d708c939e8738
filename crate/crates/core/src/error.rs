use thiserror::Error;

/// Errors produced by decomposition, algebra and circuit construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Pauli string is empty; need at least one letter")]
    EmptyPauliString,
    #[error("invalid Pauli letter '{0}'; expected I, X, Y or Z")]
    InvalidPauliLetter(char),
    #[error("qubit counts differ: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },
    #[error("{n}-qubit operator exceeds the supported maximum of {max} qubits")]
    TooManyQubits { n: usize, max: usize },
    #[error("dense form of a {n}-qubit operator exceeds the {max}-qubit dense ceiling")]
    DenseTooLarge { n: usize, max: usize },
    #[error("matrix data has {got} entries but a {n}-qubit matrix needs {expected}")]
    DimensionMismatch { n: usize, expected: usize, got: usize },
    #[error("band half-width {s} is invalid for a {n}-qubit matrix; need 1 <= s < 2^n")]
    InvalidBandWidth { s: u64, n: usize },
    #[error("cannot decompose a 1x1 matrix; need at least one qubit")]
    ZeroQubitMatrix,
    #[error("naive trace decomposition is limited to {max} qubits, got {n}")]
    NaiveTooLarge { n: usize, max: usize },
    #[error("cut level {cut} out of range; need cut <= min(n = {n}, {max})")]
    InvalidCutLevel { cut: usize, n: usize, max: usize },
    #[error("worker count must be at least 1")]
    ZeroWorkers,
    #[error("a decomposition worker panicked")]
    WorkerPanicked,
    #[error("decomposition has no terms; nothing to encode")]
    EmptyDecomposition,
    #[error(
        "coefficients must be real to build an encoding circuit \
         (largest imaginary magnitude {max_imag:.3e}); apply hermitian_augment first"
    )]
    NonRealCoefficients { max_imag: f64 },
    #[error("amplitude vector must have power-of-two length, got {0}")]
    BadAmplitudeLength(usize),
    #[error("amplitude vector entries must be nonnegative and finite")]
    InvalidAmplitude,
    #[error("amplitude vector is all zero")]
    ZeroAmplitudes,
    #[error("circuit acts on {total} qubits (data + ancilla), exceeding the {max}-qubit simulation ceiling")]
    SimulationTooLarge { total: usize, max: usize },
    #[error("malformed circuit: {0}")]
    MalformedCircuit(String),
    #[error("block list is empty")]
    EmptyBlockList,
}

pub type Result<T> = std::result::Result<T, Error>;
