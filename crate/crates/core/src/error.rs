use thiserror::Error;

/// Errors surfaced by construction and analysis operations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("associativity fails at basis triple ({0}, {1}, {2})")]
    NotAssociative(String, String, String),

    #[error("unit law fails at basis element {0}")]
    UnitLaw(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("operands live over different algebras")]
    AlgebraMismatch,

    #[error("radical trace criterion needs characteristic 0 or p > dim; got p = {p}, dim = {dim}")]
    UnsupportedCharacteristic { p: u64, dim: usize },

    #[error("internal re-verification failed: {0}")]
    InternalCheckFailed(String),

    #[error("block of dimension {0} is not a split full matrix algebra over the base field")]
    NotSplit(usize),

    #[error("primitive idempotents could not be computed; supply them explicitly")]
    IdempotentsRequired,

    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("map is not an algebra automorphism: {0}")]
    NotAutomorphism(String),

    #[error("empty span")]
    EmptySpan,

    #[error("functional is degenerate")]
    Degenerate,

    #[error("map is not a bimodule morphism: {0}")]
    NotBimoduleMorphism(String),

    #[error("morphism is not associative (fails at tuple {0})")]
    NotAssociativeMorphism(String),

    #[error("algebra is not quasi-Frobenius")]
    NotQuasiFrobenius,

    #[error("not Frobenius: {0}")]
    NotFrobenius(String),

    #[error("dual bimodule is not invertible")]
    DualNotInvertible,

    #[error("element does not define an associative morphism: {0}")]
    InvalidC(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("decision left undecided after {trials} randomized trials")]
    Undecided { trials: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
