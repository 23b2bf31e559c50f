//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("extension degree {0} is out of the supported range 1..=5")]
    UnsupportedDegree(u32),

    #[error("field order {q} exceeds the configured cap {cap}")]
    FieldTooLarge { q: u32, cap: u32 },

    #[error("no built-in modulus for GF({p}^{n}); supply one explicitly")]
    NoBuiltinModulus { p: u32, n: u32 },

    #[error("modulus {coeffs:?} is not a monic degree-{degree} polynomial over GF({p})")]
    MalformedModulus {
        coeffs: Vec<u32>,
        degree: u32,
        p: u32,
    },

    #[error("modulus {coeffs:?} is reducible over GF({p})")]
    ReducibleModulus { coeffs: Vec<u32>, p: u32 },

    #[error("division by zero in GF({q})")]
    DivisionByZero { q: u32 },

    #[error("discrete logarithm of zero is undefined")]
    DlogOfZero,

    #[error("packed value {value} is out of range for GF({q})")]
    ElementOutOfRange { value: u32, q: u32 },

    #[error("coefficient vector {coeffs:?} does not fit GF({p}^{n})")]
    BadCoefficients { coeffs: Vec<u32>, p: u32, n: u32 },

    #[error("cyclotomy order {e} does not divide q-1 = {qm1}")]
    BadCyclotomyOrder { e: u32, qm1: u32 },

    #[error("class index {index} is out of range for order {e}")]
    ClassIndexOutOfRange { index: u32, e: u32 },

    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    GroupTooLarge { order: u64, cap: u64 },

    #[error("the given subset of order {order} is not closed under products")]
    NotASubgroup { order: usize },

    #[error("cannot act on an empty point set")]
    EmptyPointSet,

    #[error("block {block} references point index {index}, but the design has {v} points")]
    BlockIndexOutOfRange {
        block: usize,
        index: u32,
        v: usize,
    },

    #[error("block {block} contains a repeated point index")]
    RepeatedIndexInBlock { block: usize },

    #[error("block {block} is empty")]
    EmptyBlock { block: usize },

    #[error("the design has no blocks")]
    EmptyDesign,

    #[error("unknown construction name `{0}`")]
    UnknownConstruction(String),

    #[error("{construction} requires {requirement}, but q = {q}")]
    ConstraintViolated {
        construction: String,
        q: u32,
        requirement: String,
    },

    #[error("{construction} needs an externally supplied base design")]
    MissingBaseDesign { construction: String },

    #[error("base design for replication must be a 2-design: {reason}")]
    BadBaseDesign { reason: String },

    #[error("cannot parse provenance string `{0}`")]
    BadProvenance(String),

    #[error("design file is inconsistent: {0}")]
    BadDesignFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
