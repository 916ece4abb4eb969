use thiserror::Error;

/// Errors raised by every module of the crate.
///
/// Each variant corresponds to one named failure of an operation; the CLI
/// prints [`Error::name`] on standard error.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid generalized Cartan matrix: {0}")]
    InvalidGcm(String),
    #[error("matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("matrix is singular (determinant 0); only nonsingular Cartan matrices are supported, affine types are excluded")]
    SingularMatrix,
    #[error("{0} is not a real root")]
    NotRealRoot(String),
    #[error("iteration cap {cap} exceeded: {what}")]
    CapExceeded { cap: usize, what: String },
    #[error("word {0} is not reduced")]
    NotReduced(String),
    #[error("no admissible word exists for {0}")]
    NoAdmissibleWord(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("coroot pairing out of range: {0}")]
    OutOfRange(String),
    #[error("spectral parameter is not in the Godement range: {0}")]
    NotGodement(String),
    #[error("point is not in the interior of the Tits cone: {0}")]
    NotInTitsCone(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("not dominant: {0}")]
    NotDominant(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    /// Stable identifier of the error kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidGcm(_) => "InvalidGCM",
            Error::NotSymmetrizable(_) => "NotSymmetrizable",
            Error::SingularMatrix => "SingularMatrix",
            Error::NotRealRoot(_) => "NotRealRoot",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::NotReduced(_) => "NotReduced",
            Error::NoAdmissibleWord(_) => "NoAdmissibleWord",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::DomainError(_) => "DomainError",
            Error::OutOfRange(_) => "OutOfRange",
            Error::NotGodement(_) => "NotGodement",
            Error::NotInTitsCone(_) => "NotInTitsCone",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::NotDominant(_) => "NotDominant",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Config(_) => "ConfigError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
