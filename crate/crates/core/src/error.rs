use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("pair {{{0}, {1}}} assigned more than once")]
    DuplicatePair(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{0} vertices exceeds the supported maximum of {max}", max = crate::digraph::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("subset sweeps need at most 64 vertices, got {0}")]
    TooLargeForMasks(usize),
    #[error("permutation degree {found} does not match {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("image list is not a bijection")]
    NotABijection,
    #[error("group generator does not preserve the digraph")]
    NotAutomorphism,
    #[error("malformed code: {0}")]
    MalformedCode(&'static str),
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("malformed expression: {0}")]
    MalformedExpr(String),
    #[error("order {requested} exceeds the enumeration cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("R_n needs at least two classes, got {0}")]
    ClassCountTooSmall(usize),
    #[error("vertices {0} and {1} are joined by an arc")]
    NotUnrelated(usize, usize),
}
