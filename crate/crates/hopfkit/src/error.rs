use crate::field::Field;
use crate::report::Report;
use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus {0} is too large (must be < 2^31)")]
    PrimeTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no primitive {n}-th root of unity in {field}")]
    NoSuchRoot { n: u64, field: Field },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not invertible")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("no antipode: the convolution system for S has no solution")]
    NoAntipode,
    #[error("antipode is not invertible")]
    AntipodeNotInvertible,
    #[error("cannot parse scalar: {0}")]
    Parse(String),
    #[error("dimension bound exceeded at degree {degree}: {dim} > {bound}")]
    DimensionBlowup {
        degree: usize,
        dim: usize,
        bound: usize,
    },
    #[error("map does not descend to the Nichols quotient (input is not a module morphism)")]
    DoesNotDescend,
    #[error("pairing recursion does not descend to the Nichols quotient: {0}")]
    InconsistentPairing(String),
    #[error("datum generator {index}: {detail}")]
    IncompatibleCharacters { index: usize, detail: String },
    #[error("Nichols truncation is not complete within cap {cap} (last dimension {last_dim})")]
    TruncationIncomplete { cap: usize, last_dim: usize },
    #[error("twist dimension {dim} exceeds the supported bound {bound}")]
    TwistTooLarge { dim: usize, bound: usize },
    #[error("support map is not injective on the nonzero-coefficient indices")]
    NotInjectiveOnSupport,
    #[error("verification failed in {context}:\n{report}")]
    Verification { context: String, report: Report },
    #[error("unknown gallery scenario `{0}`")]
    UnknownGallery(String),
    #[error("unknown export object `{0}`")]
    UnknownObject(String),
    #[error("invalid scenario: {0}")]
    Scenario(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn verification(context: impl Into<String>, report: Report) -> Self {
        Error::Verification {
            context: context.into(),
            report,
        }
    }
}
