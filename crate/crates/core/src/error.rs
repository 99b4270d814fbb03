use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("strand count must be positive")]
    ZeroStrands,
    #[error("cannot parse braid word: {0}")]
    Parse(String),
    #[error("position {position} out of range for word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("factorization does not close up: {0}")]
    NotARelator(String),
    #[error("operation requires a pencil (boundary multitwist target)")]
    NotAPencil,
    #[error("negative twist `{0}` is not allowed here")]
    NegativeTwist(String),
    #[error("separating vanishing cycle `{0}` (zero homology class) is not supported")]
    SeparatingCycle(String),
    #[error("subword mismatch at {position}: {detail}")]
    SubwordMismatch { position: usize, detail: String },
    #[error("chain relation check failed: {0}")]
    ChainIdentity(String),
    #[error("curve `{0}` has no symmetric arc descriptor")]
    NotSymmetric(String),
    #[error("genus {0} out of range")]
    GenusOutOfRange(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("unknown handle id {0}")]
    UnknownHandle(usize),
    #[error("ledger precondition violated: {0}")]
    Precondition(String),
    #[error("branch class coefficients must be even, got ({0}, {1})")]
    OddBranchClass(i64, i64),
    #[error("script line {line}: {detail}")]
    Script { line: usize, detail: String },
    #[error("not determined by the available data: {0}")]
    Undetermined(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
