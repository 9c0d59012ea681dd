use thiserror::Error;

use crate::mcf::JpaDigit;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial {0} is reducible over the rationals")]
    ReduciblePolynomial(String),
    #[error("polynomial {0} is not squarefree")]
    NotSquarefree(String),
    #[error("polynomial has degree zero")]
    ConstantPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("embedding index {index} out of range ({count} real embeddings)")]
    NoSuchEmbedding { index: usize, count: usize },
    #[error("generators span a lattice of rank {rank}, expected {expected}")]
    NotFullRank { rank: usize, expected: usize },
    #[error("element does not map the module into itself")]
    NotEndomorphism,
    #[error("no non-torsion unit found: {0}")]
    UnitNotFound(String),
    #[error("no non-negative form found: {0}")]
    NonnegativeFormNotFound(String),
    #[error("peel rule stalled after {} blocks", partial.len())]
    NotFactorizable { partial: Vec<JpaDigit> },
    #[error("characteristic polynomial {0} is reducible")]
    ReducibleCharPoly(String),
    #[error("periodicity round trip mismatch: {0}")]
    RoundTripMismatch(String),
    #[error("matrix shapes do not match: {0}")]
    ShapeMismatch(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("eigenform is not normalized: c(1) != 1")]
    NotNormalized,
    #[error("Hecke relation violated at m = {m}, n = {n}")]
    HeckeRelationViolated { m: usize, n: usize },
    #[error("coefficient table too short: need {required}, have {available}")]
    InsufficientCoefficients { required: usize, available: usize },
    #[error("no listed coefficient generates the coefficient field")]
    NotGenerated,
    #[error("coefficient field is not totally real")]
    NotTotallyReal,
    #[error("module is not stable under c({n}); witness {witness}")]
    ModuleNotStable { n: usize, witness: String },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant, used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotMonic => "NotMonic",
            Error::ReduciblePolynomial(_) => "ReduciblePolynomial",
            Error::NotSquarefree(_) => "NotSquarefree",
            Error::ConstantPolynomial => "ConstantPolynomial",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::NoSuchEmbedding { .. } => "NoSuchEmbedding",
            Error::NotFullRank { .. } => "NotFullRank",
            Error::NotEndomorphism => "NotEndomorphism",
            Error::UnitNotFound(_) => "UnitNotFound",
            Error::NonnegativeFormNotFound(_) => "NonnegativeFormNotFound",
            Error::NotFactorizable { .. } => "NotFactorizable",
            Error::ReducibleCharPoly(_) => "ReducibleCharPoly",
            Error::RoundTripMismatch(_) => "RoundTripMismatch",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::Degenerate(_) => "Degenerate",
            Error::Schema(_) => "SchemaError",
            Error::NotNormalized => "NotNormalized",
            Error::HeckeRelationViolated { .. } => "HeckeRelationViolated",
            Error::InsufficientCoefficients { .. } => "InsufficientCoefficients",
            Error::NotGenerated => "NotGenerated",
            Error::NotTotallyReal => "NotTotallyReal",
            Error::ModuleNotStable { .. } => "ModuleNotStable",
            Error::Parse(_) => "ParseError",
        }
    }

    /// True for errors caused by malformed or inconsistent input data.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Schema(_)
                | Error::Parse(_)
                | Error::NotNormalized
                | Error::HeckeRelationViolated { .. }
                | Error::NotMonic
                | Error::ReduciblePolynomial(_)
                | Error::NotSquarefree(_)
                | Error::ConstantPolynomial
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
