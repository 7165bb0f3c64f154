use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants are grouped by the layer that raises them. [`Error::kind`] sorts
/// them into input errors and mathematical precondition violations, which is
/// what front ends use to pick an exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // tree input
    #[error("invalid node label {0:?}: labels must be nonempty and contain no whitespace")]
    InvalidLabel(String),
    #[error("line {line}: expected two labels, found {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("line {line}: duplicate edge {{{a},{b}}}")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("line {line}: self loop at node {label}")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: edge {{{a},{b}}} closes a cycle")]
    HasCycle { line: usize, a: String, b: String },
    #[error("graph is disconnected: {components} components")]
    Disconnected { components: usize },
    #[error("a tree needs at least two nodes, found {0}")]
    TooFewNodes(usize),
    #[error("malformed Newick at byte {position}: {message}")]
    MalformedNewick { position: usize, message: String },
    #[error("duplicate node label {0}")]
    DuplicateLabel(String),

    // tree queries and surgery
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("unknown edge {{{0},{1}}}")]
    UnknownEdge(String, String),
    #[error("path endpoints must differ, got {0} twice")]
    EqualEndpoints(String),
    #[error("node {0} is not a leaf")]
    NotALeaf(String),
    #[error("edge {{{0},{1}}} has no leaf endpoint")]
    NotLeafEdge(String, String),
    #[error("edge {{{0},{1}}} is not an internal edge")]
    NotInternalEdge(String, String),
    #[error("node label {0} occurs on both sides of the gluing")]
    LabelCollision(String),
    #[error("internal node {0} has degree 2")]
    HasDegreeTwoInternal(String),
    #[error("tree has no internal node")]
    NoInternalNode,

    // polytopes
    #[error("vertex set is empty")]
    EmptyVRep,
    #[error("coordinate mismatch: expected {expected} coordinates, found {found}")]
    BasisMismatch { expected: usize, found: usize },
    #[error("inequality is violated by vertex #{vertex}")]
    NotValidInequality { vertex: usize },
    #[error("constraint has an all-zero coefficient vector")]
    ZeroConstraint,
    #[error("constraint system is infeasible")]
    Infeasible,
    #[error("tree has {nodes} nodes; the closed form needs more than 3")]
    TooSmall { nodes: usize },
    #[error("hypersimplex parameters must satisfy 1 <= k < n, got n={n}, k={k}")]
    BadParameters { n: usize, k: usize },

    // toric fiber products
    #[error("the origin lies in the affine hull of the vertex set")]
    OriginInAffineHull,
    #[error("invalid gluing: {0}")]
    InvalidSpec(String),
    #[error("projection images do not match the vertices of the simplex: {0}")]
    ProjectionImageMismatch(String),

    // oracle
    #[error("input exceeds the oracle cap: {what} is {actual}, limit {limit}")]
    CapExceeded { what: &'static str, actual: usize, limit: usize },
    #[error("invalid oracle cap {0:?}: expected <coords> or <coords>,<vertices>")]
    InvalidOracleCap(String),
}

/// Coarse classification used by front ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input data.
    Input,
    /// The input is well formed but violates a mathematical precondition.
    Precondition,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            InvalidLabel(_)
            | MalformedLine { .. }
            | DuplicateEdge { .. }
            | SelfLoop { .. }
            | HasCycle { .. }
            | Disconnected { .. }
            | TooFewNodes(_)
            | MalformedNewick { .. }
            | DuplicateLabel(_)
            | UnknownNode(_)
            | UnknownEdge(..)
            | InvalidOracleCap(_) => ErrorKind::Input,
            _ => ErrorKind::Precondition,
        }
    }
}
