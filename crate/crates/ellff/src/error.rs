//! Crate-wide error type.
//!
//! Everything that can go wrong is a value: bad field parameters, singular or
//! isotrivial curve inputs, cache file problems, and internal consistency
//! failures (a functional-equation or divisibility check that does not hold is
//! always a bug or a corrupted table, never something to paper over).

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is not supported (need p >= 5)")]
    BadCharacteristic(u64),
    #[error("field parameter out of range: {0}")]
    FieldTooLarge(String),
    #[error("extension degree must be >= 1")]
    BadExtensionDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("constant polynomial not allowed here")]
    ConstantPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("{0} is not irreducible")]
    NotIrreducible(String),
    #[error("operands live over different base fields")]
    MixedBaseField,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),

    #[error("curve is singular (discriminant vanishes)")]
    SingularCurve,
    #[error("curve is isotrivial (constant j-invariant)")]
    IsotrivialCurve,
    #[error("twist factor must be nonzero")]
    ZeroTwist,
    #[error("pullback map must be non-constant")]
    ConstantPullback,
    #[error("reduction data outside the classification table: {0}")]
    UnexpectedReduction(String),

    #[error("twist derivation unsupported: {0}")]
    TwistDerivationUnsupported(String),
    #[error("table level mismatch: expected q={expected_q}, n={expected_n}")]
    LevelMismatch { expected_q: u64, expected_n: u32 },

    #[error("table file version mismatch (found {found:?}, want \"ELLFF-TABLE v1\")")]
    CacheVersionMismatch { found: String },
    #[error("table file is corrupt: {reason}")]
    CacheCorrupt { reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{}: {source}", path.display())]
    IoPath {
        path: std::path::PathBuf,
        source: std::io::Error,
    },

    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
