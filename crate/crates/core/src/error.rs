use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("arity mismatch for `{op}`: {detail}")]
    ArityMismatch { op: String, detail: String },

    #[error("range violation: {0}")]
    RangeViolation(String),

    #[error("missing table for `{0}`")]
    MissingTable(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("not a congruence: {0}")]
    NotACongruence(String),

    #[error("not a morphism: operation `{op}` fails at arguments {args:?}")]
    NotAMorphism { op: String, args: Vec<usize> },

    #[error("commutator orientations disagree on ({alpha}, {beta}): {detail}")]
    AsymmetricCommutator { alpha: usize, beta: usize, detail: String },

    #[error("not a ring: {0}")]
    NotARing(String),

    #[error("not a bounded lattice algebra: {0}")]
    NotALattice(String),

    #[error("lattice law violation: {0}")]
    LatticeLawViolation(String),

    #[error("commutator axiom violation: {0}")]
    CommutatorAxiomViolation(String),

    #[error("compact set violation: {0}")]
    CompactSetViolation(String),

    #[error("join density violation at `{0}`")]
    JoinDensityViolation(String),

    #[error("reticulation map not well defined: {0}")]
    NotWellDefined(String),

    #[error("basis violation: {0}")]
    BasisViolation(String),

    #[error("topology too large: {0} points (limit 64)")]
    TooManyPoints(usize),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
