use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("variable z{index} is out of range for a polynomial in {k} variables")]
    VariableOutOfRange { index: usize, k: usize },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("zero polynomial has no Mahler measure")]
    ZeroPolynomial,

    #[error("substituted polynomial F_A is zero and is excluded from the measure set")]
    VanishingSubstitution,

    #[error("exponent does not fit in a signed 64-bit integer")]
    ExponentOverflow,

    #[error("matrix row {row} is zero")]
    ZeroRow { row: usize },

    #[error("matrix is not in Hermite normal form")]
    NotHermite,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("operation requires integer coefficients")]
    NonIntegral,

    #[error("root refinement did not converge after {iterations} iterations (worst bound {worst_bound:e})")]
    NoConvergence { iterations: usize, worst_bound: f64 },

    #[error("zero certificate inconclusive: value {value} +/- {error_bound:e} straddles threshold {threshold}")]
    Inconclusive {
        value: f64,
        error_bound: f64,
        threshold: f64,
    },

    #[error("no usable Lawton specialization: every scheduled specialization was zero or exceeded the degree cap")]
    NoSpecialization,

    #[error("too many sample points hit a zero of F ({skipped} of {samples})")]
    TooManyZeros { skipped: usize, samples: usize },

    #[error("spectrum sample is empty")]
    EmptySample,

    #[error("invalid JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
