use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pairing B is singular at tolerance {tol:e}")]
    SingularPairing { tol: f64 },
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("R = {r} is inconsistent with the Frobenius weight (expected {expected})")]
    InconsistentR { r: String, expected: String },
    #[error("weight matrix x is singular")]
    SingularX,
    #[error("direct sum summands carry different R values")]
    MismatchedR,
    #[error("algebra shape does not fit the grading: {0}")]
    ShapeMismatch(String),
    #[error("basis index {0} has no grade")]
    UngradedIndex(usize),
    #[error("crossing axioms needed here fail: {0}")]
    AxiomPrereqFailed(String),
    #[error("boundary edge {0} cannot be flipped")]
    BoundaryEdge(usize),
    #[error("edge {0} is not in the triangulation")]
    UnknownEdge(usize),
    #[error("triangle {0} is not in the triangulation")]
    UnknownTriangle(usize),
    #[error("malformed triangulation: {0}")]
    BadTriangulation(String),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("boundary state {state} out of range for dimension {dim}")]
    StateOutOfRange { state: usize, dim: usize },
    #[error("diagram arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("Frobenius form is not symmetric (residual {0:e})")]
    NotSymmetric(f64),
    #[error("a genus-{genus} surface has no spin structure of odd parity")]
    InvalidParity { genus: usize },
    #[error("solver budget exhausted with {found} verified solutions")]
    BudgetExhausted { found: usize },
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
