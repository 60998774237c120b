use thiserror::Error;

use crate::report::Report;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("no assignment for atom `{0}`")]
    UnassignedAtom(String),
    #[error("atom `{0}` is reserved for Hodge targets")]
    ReservedAtom(String),
    #[error("atom `{0}` declared twice")]
    DuplicateAtom(String),
    #[error("invalid atom name `{0}`")]
    InvalidAtomName(String),
    #[error(
        "hodge polynomial of `{atom}` evaluates to {found} at u=v=1, expected euler {expected}"
    )]
    HodgeMismatch {
        atom: String,
        expected: String,
        found: String,
    },
    #[error("polynomial involves non-reserved atom `{0}`")]
    NonReservedAtom(String),
    #[error("zero generator at position {0} in denominator set")]
    ZeroGenerator(usize),
    #[error("fractions over different denominator sets")]
    DenominatorMismatch,
    #[error("{0}")]
    Invalid(Report),
    #[error("model mismatch: expected `{expected}`, found `{found}`")]
    ModelMismatch { expected: String, found: String },
    #[error("unknown stratum `{id}` in `{model}`")]
    UnknownStratum { model: String, id: String },
    #[error("level {level} is beyond the tower depth {depth}")]
    OutOfDepth { level: usize, depth: usize },
    #[error("level {requested} is below level {level}")]
    LevelBelow { requested: usize, level: usize },
    #[error("unstable at level {level}")]
    Unstable { level: usize },
    #[error("zero multiplier at step {step}")]
    ZeroMultiplier { step: usize },
    #[error("multiplier system has no step {0}")]
    MissingStep(usize),
    #[error("tower `{0}` has no certified multipliers")]
    Uncertified(String),
    #[error("tower mismatch")]
    TowerMismatch,
    #[error("transition systems differ")]
    TransitionMismatch,
    #[error("no twist class for level {0}")]
    MissingTwist(usize),
    #[error("pro-point prefix of length {len} does not reach level {level}")]
    PrefixTooShort { len: usize, level: usize },
    #[error("pro-point is not a compatible thread at level {0}")]
    IncompatiblePoint(usize),
    #[error("combinatorial bound exceeded: {count} > {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error("not a fiber square at level {level}: {reason}")]
    NotFiberSquare { level: usize, reason: String },
    #[error("symbol {symbol} out of range for alphabet size {k}")]
    SymbolOutOfRange { symbol: u32, k: u32 },
    #[error("{line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{0}")]
    InvalidArgument(String),
}

impl From<Report> for Error {
    fn from(report: Report) -> Self {
        Error::Invalid(report)
    }
}
