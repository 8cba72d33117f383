use thiserror::Error;

/// Errors raised by the lattice, enumeration and invariant routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("denominator must be a positive integer")]
    BadDenominator,

    #[error("pairing of lattice members is not integral: {0}")]
    NonIntegralPairing(String),

    #[error("matrix is not positive definite (pivot {index} is {pivot})")]
    NotPositiveDefinite { index: usize, pivot: String },

    #[error("vector is not a member of the lattice")]
    NotAMember,

    #[error("vector is not in the rational span of the lattice")]
    NotInSpan,

    #[error("collect mode refused: more than {cap} vectors")]
    MemoryCapExceeded { cap: usize },

    #[error("invalid root lattice {family}{rank}")]
    InvalidRootLattice { family: char, rank: usize },

    #[error("glue vector {index} is not in the dual of the root lattice")]
    GlueNotInDual { index: usize },

    #[error("glued lattice {name} is not unimodular (determinant {det})")]
    NotUnimodular { name: String, det: String },

    #[error("catalog entry {name}: {reason}")]
    Catalog { name: String, reason: String },

    #[error("unknown lattice {0}")]
    UnknownLattice(String),

    #[error("unsupported theta index {0}; expected 4, 6 or 8")]
    UnsupportedThetaIndex(u32),

    #[error("vector is not extremal: witness u with u^2 = {norm}, u.w = {pairing}")]
    NotExtremal { norm: i64, pairing: i64 },

    #[error("parity mismatch: w^2 = {w_norm} but m = {m}")]
    ParityMismatch { w_norm: String, m: u32 },

    #[error("no certificate: {0}")]
    NoCertificate(String),

    #[error("class square is {0}, expected +1")]
    ClassSquareNotOne(String),

    #[error("adjunction genus is not integral or negative for this class")]
    GenusParity,

    #[error("plumbing graph is not a tree")]
    NotATree,

    #[error("claimed basis vector {index} is not in the lattice")]
    BasisNotInLattice { index: usize },

    #[error("non-simply-laced or unrecognised Dynkin component")]
    UnrecognisedDynkin,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("all inputs absent")]
    NoInputs,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
