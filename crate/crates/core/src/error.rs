use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime accepted by trial division")]
    NotPrime(u64),
    #[error("degree {d} is not compatible with p = {p}: {reason}")]
    DegreeNotCompatible { p: u64, d: u64, reason: String },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("degenerate orbit: {0}")]
    DegenerateOrbit(String),
    #[error("no suitable object found: {0}")]
    NotFound(String),
    #[error("Frobenius is not a translation by a kernel point")]
    InconsistentFrobenius,
    #[error("Frobenius check failed: {0}")]
    FrobeniusMismatch(String),
    #[error("non-invertible element: {0}")]
    NonInvertible(String),
    #[error("isogeny degree {0} is even; only odd kernels are supported")]
    EvenDegree(u64),
    #[error("linear system leaves {missing} column(s) undetermined")]
    RankDeficient { missing: usize },
    #[error("gave up after {trials} trials: {what}")]
    Timeout { trials: u64, what: String },
    #[error("need more than {needed} evaluation points, only {found} available")]
    InsufficientPoints { needed: usize, found: usize },
    #[error("endomorphism search failed within bound {0}")]
    SearchFailed(i64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::DegreeNotCompatible { .. } => "DegreeNotCompatible",
            Error::InvalidPoint(_) => "InvalidPoint",
            Error::DegenerateOrbit(_) => "DegenerateOrbit",
            Error::NotFound(_) => "NotFound",
            Error::InconsistentFrobenius => "InconsistentFrobenius",
            Error::FrobeniusMismatch(_) => "FrobeniusMismatch",
            Error::NonInvertible(_) => "NonInvertible",
            Error::EvenDegree(_) => "EvenDegree",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::Timeout { .. } => "Timeout",
            Error::InsufficientPoints { .. } => "InsufficientPoints",
            Error::SearchFailed(_) => "SearchFailed",
            Error::InvalidInput(_) => "InvalidInput",
            Error::VerificationFailed(_) => "VerificationFailed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
