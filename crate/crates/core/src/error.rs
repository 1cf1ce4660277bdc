use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Artinian algebra: {0}")]
    InvalidAlgebra(String),

    #[error("element is not a unit (its evaluation is zero)")]
    NotAUnit,

    #[error("coefficient algebra mismatch")]
    AlgebraMismatch,

    #[error("invalid algebra morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid Lie algebra: {0}")]
    InvalidLie(String),

    #[error("subalgebra rank {rank} is out of range for a Lie algebra of dimension {dim}")]
    InvalidRank { rank: usize, dim: usize },

    #[error("basis vectors {0} and {1} bracket outside the subalgebra")]
    NotASubalgebra(usize, usize),

    #[error("not a derivation: Leibniz rule fails on basis pair ({0}, {1})")]
    NotADerivation(usize, usize),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("Lie pair mismatch")]
    PairMismatch,

    #[error("element has a nonzero component along the unit of the coefficient algebra")]
    NotInMaximalIdeal,

    #[error("not a Maurer-Cartan element")]
    NotMaurerCartan,

    #[error("Maurer-Cartan residual does not vanish modulo m^{0}")]
    NotMaurerCartanModulo(usize),

    #[error("invalid gauge parameter: {0}")]
    InvalidGauge(String),

    #[error("center of the map is not the expected one")]
    CenterMismatch,

    #[error("map does not preserve brackets on basis pair ({0}, {1})")]
    NotBracketPreserving(usize, usize),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
