use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("sign vector has length {got}, expected at most/exactly {expected}")]
    SignLength { expected: usize, got: usize },

    #[error("sign {0} is not +1 or -1")]
    InvalidSign(i64),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("convex weight must lie in [0, 1], got {0}")]
    InvalidWeight(f64),

    #[error("polynomial of degree {degree} has only {real_roots} real roots (with multiplicity)")]
    NotRealRooted { real_roots: usize, degree: usize },

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("{edges} edges exceed the brute-force cap of {cap}")]
    BruteForceCap { edges: usize, cap: usize },

    #[error("{n} vertices exceed the supported maximum of {max} for this operation")]
    TooManyVertices { n: usize, max: usize },

    #[error("truncated cover would exceed {cap} nodes")]
    NodeCap { cap: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("assignment is already complete; no undecided edge remains")]
    CompleteAssignment,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
