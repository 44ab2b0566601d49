use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has {found} entries, expected {expected}")]
    EntryCount { expected: usize, found: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("kraus list is empty")]
    EmptyKraus,

    #[error("kraus operators are not trace preserving (closure residual {residual:e})")]
    NotCptp { residual: f64 },

    #[error("operator is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("parameter {name} = {value} outside [0, 1]")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("{found} vacuum amplitudes for {expected} kraus operators")]
    AmplitudeCount { expected: usize, found: usize },

    #[error("vacuum amplitudes are not normalized (sum of squared moduli {sum})")]
    AmplitudeNormalization { sum: f64 },

    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("entanglement-breaking test undecided for dimension {dim}")]
    Undecided { dim: usize },

    #[error("walker support would leave the lattice")]
    BoundaryOverflow,

    #[error("measurement basis is not orthonormal (residual {residual:e})")]
    NonOrthonormalBasis { residual: f64 },

    #[error("no correction supplied for outcome {0:?}")]
    MissingCorrection(String),
}

pub type Result<T> = std::result::Result<T, Error>;
