use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("all forms are zero")]
    ZeroIdeal,

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("ideal is not primary to (x,y): generators share the factor {common_factor}")]
    NotMPrimary { common_factor: String },

    #[error("invalid parameterization: {0}")]
    InvalidParameterization(String),

    #[error("the row p*phi vanishes identically at p = {point}")]
    ZeroRow { point: String },

    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("Hilbert function slope did not stabilize up to n = {cap}")]
    SlopeNotStabilized { cap: usize },

    #[error("no admissible reparameterization pair after {attempts} attempts")]
    ResamplingExhausted { attempts: usize },

    #[error("form of degree {degree} is not a polynomial in the given pair of degree-{r} forms")]
    NotInSubring { degree: usize, r: usize },

    #[error("degree {degree} is not divisible by {r}")]
    DegreeNotMultiple { degree: usize, r: usize },

    #[error("ideal is not monomial")]
    NotMonomial,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl Error {
    /// True for errors caused by malformed or invalid input, as opposed to a
    /// computation that could not certify its own result.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidField(_)
                | Error::Parse(_)
                | Error::ZeroIdeal
                | Error::DegreeMismatch { .. }
                | Error::NotMPrimary { .. }
                | Error::InvalidParameterization(_)
                | Error::DimensionMismatch(_)
                | Error::NotMonomial
        )
    }
}
