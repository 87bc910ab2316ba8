use crate::Nat;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("index {index} is outside the evaluation horizon {horizon}")]
    Horizon { index: Nat, horizon: Nat },

    #[error("partial density is undefined at n = 0")]
    ZeroLength,

    #[error("checkpoint list is empty")]
    EmptyCheckpoints,

    #[error("checkpoints must be strictly increasing ({prev} then {next})")]
    CheckpointOrder { prev: u64, next: u64 },

    #[error("set has only {found} elements below horizon {horizon}, needed {wanted}")]
    InsufficientElements {
        wanted: u64,
        found: u64,
        horizon: Nat,
    },

    #[error("argument {x} is outside the sampler domain [0, {bound})")]
    OutOfDomain { x: u64, bound: u64 },

    #[error("sampler is not injective: s({first}) = s({second}) = {value}")]
    NotInjective { first: u64, second: u64, value: Nat },

    #[error("table is not a permutation: {0}")]
    NotPermutation(String),

    #[error("prefixes disagree at position {position}: codes {first} and {second}")]
    Inconsistent {
        position: usize,
        first: Nat,
        second: Nat,
    },

    #[error("function is not strictly increasing at index {index}")]
    NotMonotone { index: usize },

    #[error("function table is undefined at {index}")]
    Undefined { index: u64 },

    #[error("table is not a valid weak representation: {0}")]
    InvalidTable(String),

    #[error("program index {0} is not registered")]
    UnknownProgram(usize),

    #[error("registry has no always-divergent program")]
    NoDivergentProgram,

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn horizon(index: impl Into<Nat>, horizon: &Nat) -> Self {
        Error::Horizon {
            index: index.into(),
            horizon: horizon.clone(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}
