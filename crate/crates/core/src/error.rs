use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected a {expected}-qubit state, got {got} qubits")]
    QubitCount { expected: u8, got: u8 },
    #[error("a state vector needs 2 or 4 amplitudes, got {len}")]
    StateLength { len: usize },
    #[error("state is not normalized: |psi|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },
    #[error("non-finite amplitude or probability")]
    NonFinite,
    #[error("state matches none of the four Bell states")]
    BellClassification,
    #[error("probability {value} is negative")]
    NegativeProbability { value: f64 },
    #[error("probabilities sum to {sum}, not 1")]
    ProbabilitySum { sum: f64 },
    #[error("distribution has no outcomes")]
    EmptyDistribution,
    #[error("joint marginal deviates from the prior by {max_dev}")]
    MarginalMismatch { max_dev: f64 },
    #[error("a {dim}x{dim} matrix needs {expected} entries, got {got}")]
    MatrixShape { dim: usize, expected: usize, got: usize },
    #[error("density matrix dimension must be 2 or 4, got {dim}")]
    MatrixDim { dim: usize },
    #[error("matrix is not Hermitian (max deviation {max_dev})")]
    NotHermitian { max_dev: f64 },
    #[error("matrix trace is {trace}, not 1")]
    Trace { trace: f64 },
    #[error("eigenvalue {value} is negative beyond tolerance")]
    NegativeEigenvalue { value: f64 },
    #[error("Jacobi sweeps did not reach the off-diagonal tolerance")]
    NoConvergence,
    #[error("ensemble has no members")]
    EmptyEnsemble,
    #[error("ensemble members have different dimensions")]
    MixedDimensions,
    #[error("announcement does not belong to this protocol")]
    ForeignAnnouncement,
    #[error("no usable records")]
    EmptyRecords,
    #[error("round count must be at least 1")]
    ZeroRounds,
    #[error("message does not match the protocol's secret width")]
    SecretWidth,
    #[error("hash seed must be {expected} bits for this input, got {got}")]
    HashSeedLength { expected: usize, got: usize },
    #[error("requested {out_len} output bits from {input_len} input bits")]
    OutputTooLong { out_len: usize, input_len: usize },
}
