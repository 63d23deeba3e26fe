use thiserror::Error;

/// Position-carrying parse failure. `line` is 1-based (0 for single-line input),
/// `col` is a byte offset within the line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, col {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError { line, col, msg: msg.into() }
    }

    pub(crate) fn at_line(mut self, line: usize) -> Self {
        self.line = line;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("dart count {0} is odd")]
    OddDartCount(usize),
    #[error("edge pairing is not an involution at dart {0}")]
    NotInvolution(usize),
    #[error("edge pairing fixes dart {0}")]
    FixedDart(usize),
    #[error("rotation is not a permutation (dart {0})")]
    NotPermutation(usize),
    #[error("map is disconnected")]
    Disconnected,
    #[error("map is not planar: V - E + F = {0}")]
    NonPlanar(i64),
    #[error("color list has {got} entries, expected {expected}")]
    ColorCount { got: usize, expected: usize },
    #[error("edge {0} not found")]
    EdgeNotFound(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeletonError {
    #[error("degree {0} unsupported (must be 3, 6 or 9)")]
    DegreeUnsupported(usize),
    #[error("skeleton has singular black vertices")]
    SingularBlackPresent,
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("vertex {0} has no marking")]
    UnmarkedVertex(usize),
    #[error("invalid valency {0}")]
    InvalidValency(i64),
    #[error("branch choice required for E7")]
    BranchRequired,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("coset enumeration exceeded {0} cosets (inconclusive)")]
    LimitExceeded(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("Milnor budget violated: total {0}, expected 19")]
    MilnorBudgetViolated(u32),
    #[error("multiplicity budget violated: total {0}, expected 18")]
    MultiplicityBudgetViolated(u32),
    #[error("not maximal: {0}")]
    NotMaximal(String),
    #[error("unknown row {0}")]
    UnknownRow(usize),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
}
