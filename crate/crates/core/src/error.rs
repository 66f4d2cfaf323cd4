use thiserror::Error;

/// Errors raised while building or querying rings, ideals and expansions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 1")]
    InvalidModulus(usize),
    #[error("ring of size {size} exceeds the construction bound {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },
    #[error("element index {index} out of range for ring of size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("invalid homomorphism: {0}")]
    HomInvalid(String),
    #[error("invalid multiplicative set: {0}")]
    InvalidMultSet(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("expansion axiom violated: {0}")]
    AxiomViolation(String),
    #[error("expansion `{label}` is not defined on ideal {ideal}")]
    UnsupportedShape { label: String, ideal: String },
    #[error("ideal {0} is not proper")]
    ImproperIdeal(String),
    #[error("absorbing degree {n} exceeds the configured cap {cap}")]
    NTooLarge { n: usize, cap: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("expression `{expr}` does not apply to ring {ring}")]
    ShapeMismatch { expr: String, ring: String },
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("bad conjecture: {0}")]
    BadConjecture(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("at position {pos}: {error}")]
    Located { pos: usize, error: Box<Error> },
}

impl Error {
    /// The underlying error, with any position wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { error, .. } => error.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
