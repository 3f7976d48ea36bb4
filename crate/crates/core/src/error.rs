use thiserror::Error;

use crate::linalg::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("cover relation contains a cycle through `{0}`")]
    CycleDetected(String),
    #[error("`{q}` < `{p}` is not a cover: `{r}` lies strictly between")]
    NonCoverPair { q: String, p: String, r: String },
    #[error("poset is not bounded: {0}")]
    NotBounded(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("shape mismatch in {context}: expected {expected:?}, found {found:?}")]
    ShapeMismatch { context: String, expected: (usize, usize), found: (usize, usize) },
    #[error("not a complex: the composite of differentials at degree {degree} is nonzero")]
    NotAComplex { degree: i64 },
    #[error("not a chain map at degree {degree}")]
    NotChainMap { degree: i64 },
    #[error("missing map for cover `{q}` < `{p}`")]
    MissingCoverMap { q: String, p: String },
    #[error("missing transfer for `{j}` < `{i}`")]
    MissingTransfer { j: String, i: String },
    #[error("functor is not path independent ({} violations)", .0.len())]
    NotFunctorial(Vec<String>),
    #[error("variance mismatch: expected {expected}")]
    VarianceMismatch { expected: &'static str },
    #[error("`{q}` is not below `{p}`")]
    NotBelow { q: String, p: String },
    #[error("subset is not lower closed: `{0}` is missing")]
    NotLowerClosed(String),
    #[error("chain is not unrefinable at `{0}`")]
    NotUnrefinable(String),
    #[error("chain does not end at the top element")]
    ChainNotToTop,
    #[error("size guard exceeded: {0}")]
    SizeGuardExceeded(String),
    #[error("`{q}` is not a coatom of `{p}`")]
    NotCoatomOf { q: String, p: String },
    #[error("elements `{0}` and `{1}` are not comparable")]
    NotComparable(String, String),
    #[error("poset is not pure")]
    NotPure,
    #[error("coatom ordering is not a recursive coatom ordering: {0}")]
    OrderingInvalid(String),
    #[error("degree {degree} outside the admissible range {lo}..={hi}")]
    DegreeOutOfRange { degree: i64, lo: i64, hi: i64 },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("outside the domain of the closed formula: {0}")]
    OutOfFormulaDomain(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
    #[error("invalid scalar `{0}`")]
    InvalidScalar(String),
    #[error("invalid field `{0}`")]
    InvalidField(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
