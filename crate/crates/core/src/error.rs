use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("catalog I/O error: {0}")]
    Io(String),
    #[error("catalog parse error: {0}")]
    Parse(String),
    #[error("catalog validation failed for row {id}: {check}")]
    Validation { id: String, check: String },
    #[error("second Chern class pairs to zero on H^2; lambda is undefined")]
    ZeroChernClass,
    #[error("non-integral Chern pairing for {id}: {value}")]
    NonIntegralPairing { id: String, value: String },
    #[error("leading cubic coefficient {0} is odd; no tensor inverts to it")]
    OddLeadingCoefficient(String),
    #[error("-K^3 = {0} is odd")]
    OddDegree(u64),
    #[error("family {0} lacks the center curve data needed for geometric mode")]
    MissingGeometry(String),
    #[error("matrix has determinant {0}, not +1 or -1")]
    NotUnimodular(String),
    #[error("unknown family id {0}")]
    UnknownId(String),
}

pub type Result<T> = std::result::Result<T, Error>;
