use thiserror::Error;

/// Errors produced by lattice construction, analysis and the symbolic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("cover relation contains a cycle")]
    CyclicCovers,

    #[error("duplicate cover ({0}, {1})")]
    DuplicateCover(usize, usize),

    #[error("not a lattice: elements {a} and {b} have no {missing}")]
    NotALattice {
        a: usize,
        b: usize,
        missing: &'static str,
    },

    #[error("not a meet-semilattice: {0}")]
    NotASemilattice(String),

    #[error("empty carrier")]
    EmptyCarrier,

    #[error("input is not a chain")]
    NotAChain,

    #[error("carrier of size {size} exceeds capacity {cap}")]
    CapacityExceeded { size: usize, cap: usize },

    #[error("{what}: size {size} exceeds bound {bound}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("closure did not reach a fixpoint within {rounds} rounds")]
    NonTermination { rounds: usize },

    #[error("lattice family mismatch: {0}")]
    FamilyMismatch(String),

    #[error("unsupported block: {0}")]
    UnsupportedBlock(String),

    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),

    #[error("description is not a complete sublattice")]
    NotASublattice,

    #[error("description is not a proper subset")]
    NotProper,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
