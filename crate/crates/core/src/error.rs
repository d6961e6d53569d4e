use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial matrix is singular")]
    Singular,
    #[error("variable partition mismatch: ({0}, {1}) vs ({2}, {3}) outputs/inputs")]
    PartitionMismatch(usize, usize, usize, usize),
    #[error("system is not in input-output form")]
    NotInputOutputForm,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("missing trajectory channel `{0}`")]
    MissingChannel(String),
    #[error("certificate failed re-verification: {0}")]
    CertificateRejected(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
