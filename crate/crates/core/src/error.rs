use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix must have dimension at least 1")]
    EmptyMatrix,

    #[error("matrix is not Hermitian (asymmetry {0:e} exceeds 1e-9)")]
    NotHermitian(f64),

    #[error("operator is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositiveSemidefinite(f64),

    #[error("density matrix trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("prior probability {0} outside the open interval (0, 1)")]
    InvalidPrior(f64),

    #[error("the two states are identical (max-abs difference {0:e})")]
    StatesIdentical(f64),

    #[error("parameter `{name}` = {value} out of range: {expected}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("outcome never occurs: Tr(rho Pi) = {0:e}")]
    OutcomeNeverOccurs(f64),

    #[error("every outcome is inconclusive (Q = {0})")]
    AllInconclusive(f64),

    #[error(
        "extreme eigenvalues of the transformed state are degenerate (m = {m}, n = {n}); \
         use the block solver for block-separable ensembles"
    )]
    DegenerateExtremes { m: usize, n: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("ensemble has support dimension {0}, expected a qubit (2)")]
    NotQubit(usize),

    #[error("states do not commute (commutator max-abs {0:e})")]
    NotCommuting(f64),

    #[error("ensemble is not block separable: {0}")]
    NotBlockSeparable(String),

    #[error("invalid matrix JSON: {0}")]
    InvalidMatrixJson(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
