use thiserror::Error;

/// Errors raised by the exact-algebra toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("polynomial is not monic: {0}")]
    NotMonic(String),

    #[error("polynomial has wrong degree: expected {expected}, got {got}")]
    WrongDegree { expected: String, got: usize },

    #[error("polynomial is reducible over the rationals: {0}")]
    Reducible(String),

    #[error("matrix is not invertible over the integers")]
    NotUnimodular,

    #[error("element is not a unit (norm {0})")]
    NotAUnit(String),

    #[error("elements belong to different number fields")]
    FieldMismatch,

    #[error("invalid Galois action: {0}")]
    InvalidGaloisAction(String),

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("characteristic polynomial has repeated roots")]
    RepeatedRoots,

    #[error("characteristic polynomial mismatch: {0}")]
    CharPolyMismatch(String),

    #[error("group element kind or dimension mismatch: {0}")]
    KindMismatch(String),

    #[error("element is not a member of the ambient group: {0}")]
    NotInAmbient(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown registry entry: {0}")]
    UnknownEntry(String),

    #[error("registry error: {0}")]
    Registry(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("relator does not evaluate to the identity: {0}")]
    RelatorViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
