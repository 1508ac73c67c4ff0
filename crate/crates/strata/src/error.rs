use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not finite dimensional within bound: {0}")]
    NotFiniteDimensionalWithinBound(String),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("not an idempotent: {0}")]
    NotIdempotent(String),
    #[error("not a sum of distinguished idempotents: {0}")]
    NotIdempotentSum(String),
    #[error("closure does not contain the unit")]
    NotUnital,
    #[error("radical needs characteristic 0 or p > dim, got p = {0}")]
    RadicalUnsupportedCharacteristic(u64),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("relation is not antisymmetric: {0}")]
    NotAntisymmetric(String),
    #[error("too many labels for exhaustive search: {0}")]
    SizeGuard(usize),
    #[error("not quasi-hereditary")]
    NotQuasiHereditary,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("support is not a coideal: {0}")]
    SupportNotCoideal(String),
    #[error("algebra is not basic")]
    NotBasic,
    #[error("invalid multiplicity tables: {0}")]
    InvalidTables(String),
    #[error("unsupported type {0:?}")]
    UnsupportedType(String),
    #[error("isomorphism test undetermined: {0}")]
    IsoUndetermined(String),
    #[error("idempotent is not compatible: {0}")]
    Incompatible(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
}

pub type Result<T> = std::result::Result<T, Error>;
