use thiserror::Error;

use crate::multipoly::VarId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no value assigned to variable {0}")]
    MissingVariable(VarId),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("shape violation: {0}")]
    Shape(String),

    #[error("rank deficient: expected rank {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },

    #[error("point configuration is not uniform")]
    NotUniform,

    #[error("partition {partition} does not fit in a {rows}x{cols} box")]
    PartitionDoesNotFit {
        partition: String,
        rows: usize,
        cols: usize,
    },

    #[error("kernel of the Segre matrix is trivial (overconstrained or inconsistent input)")]
    EmptyKernel,

    #[error("kernel of the Segre matrix has dimension {0} (degenerate configuration)")]
    DegenerateKernel(usize),

    #[error("degenerate camera pair: {0}")]
    DegenerateCameras(String),

    #[error("linear system still singular after all {0} monomials were used")]
    SingularSystem(usize),

    #[error("Segre polynomial vanishes identically for this configuration")]
    ZeroImage,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MissingVariable(_) => "missing-variable",
            Error::NotSquare { .. } => "not-square",
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::Shape(_) => "shape",
            Error::RankDeficient { .. } => "rank-deficient",
            Error::NotUniform => "not-uniform",
            Error::PartitionDoesNotFit { .. } => "partition-does-not-fit",
            Error::EmptyKernel => "empty-kernel",
            Error::DegenerateKernel(_) => "degenerate-kernel",
            Error::DegenerateCameras(_) => "degenerate-cameras",
            Error::SingularSystem(_) => "singular-system",
            Error::ZeroImage => "zero-image",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::Parse { .. } => "parse",
        }
    }

    pub(crate) fn parse(position: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            position: position.into(),
            message: message.into(),
        }
    }
}
