use thiserror::Error;

/// Errors raised by the geometry, group and graph routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("unsupported field GF({p}^{n})")]
    UnsupportedField { p: u32, n: u32 },
    #[error("polynomial {0:?} is not irreducible")]
    Reducible(Vec<u32>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch")]
    FieldMismatch,
    #[error("{r} is not a power of the characteristic {p} up to p^{n}")]
    BadFrobeniusPower { r: u32, p: u32, n: u32 },
    #[error("expected ambient dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("zero vector is not a projective point")]
    ZeroVector,
    #[error("points coincide; no line through them")]
    SamePoints,
    #[error("line does not lie on the parabolic quadric")]
    LineNotOnQuadric,
    #[error("points are collinear; they do not span a plane")]
    Collinear,
    #[error("unsupported order q = {0}")]
    UnsupportedOrder(u32),
    #[error("invalid field pair (k, f) = ({k}, {f}); need f = k or f = k^3")]
    InvalidFieldPair { k: u64, f: u64 },
    #[error("model corruption: {0}")]
    ModelCorruption(String),
    #[error("property violated: {0}")]
    PropertyViolation(String),
    #[error("not a flag")]
    NotAFlag,
    #[error("expected rank {expected}, got {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("invalid correlation: {0}")]
    InvalidCorrelation(String),
    #[error("permutation degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation")]
    NotAPermutation,
    #[error("element list is not closed under multiplication")]
    NotASubgroup,
    #[error("{0} is not an involution")]
    NotAnInvolution(&'static str),
    #[error("graph has {0} vertices; automorphism search is capped at {1}")]
    GraphTooLarge(usize, usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("serialization: {0}")]
    Serialization(String),
    #[error("permutation is not a graph automorphism")]
    NotAnAutomorphism,
}

pub type Result<T> = std::result::Result<T, Error>;
