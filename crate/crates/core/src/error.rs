use thiserror::Error;

use crate::clusteralg::SeedEnumeration;


pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("`{num}` is not divisible by `{den}`")]
    NotDivisible { num: String, den: String },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("interpolation needs {needed} points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("extra point at q = {0} does not lie on the interpolated curve")]
    InconsistentExtraPoint(String),
    #[error("interpolated polynomial has non-integer coefficients: {0}")]
    NonIntegerCoefficients(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("quiver has a loop at vertex {0}")]
    HasLoop(usize),
    #[error("quiver has a 2-cycle between {0} and {1}")]
    HasTwoCycle(usize, usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("quiver has an oriented cycle")]
    NotAcyclic,
    #[error("quiver is not of type A with vertices numbered along the path")]
    NotTypeA,
    #[error("bad interval [{0},{1}]")]
    BadInterval(usize, usize),

    #[error("matrix of arrow `{arrow}` has shape {got:?}, expected {expected:?}")]
    ShapeMismatch { arrow: String, expected: (usize, usize), got: (usize, usize) },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("representations live on different quivers")]
    QuiverMismatch,
    #[error("representation violates declared relation {0}")]
    RelationViolated(usize),
    #[error("invalid path: {0}")]
    PathInvalid(String),
    #[error("injective copresentation has a negative multiplicity for {0:?}")]
    NegativeSolution(Vec<i64>),

    #[error("bad dimensions: {0}")]
    BadDims(String),
    #[error("point count for e = {e:?} is not polynomial: {reason}")]
    NotPolynomialCount { e: Vec<usize>, reason: String },

    #[error("{0} is projective")]
    IsProjective(String),
    #[error("cluster characters of {0} and {1} coincide")]
    CollisionDetected(String, String),
    #[error("no indecomposable object has cluster character `{0}`")]
    NotInTable(String),
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("exchange graph not closed within depth {depth}")]
    DepthExceeded { depth: usize, partial: Box<SeedEnumeration> },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
