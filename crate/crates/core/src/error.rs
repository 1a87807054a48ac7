use thiserror::Error;

/// Errors raised by the library. Negative mathematical answers (not k-potent,
/// not PPO, recognition failure) are returned as values where the caller is
/// expected to branch on them; they only become errors when an operation's
/// precondition depends on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("pattern must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("pattern contains an ambiguous (#) entry")]
    Ambiguous,

    #[error("empty pattern (order 0)")]
    Empty,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid signature: entries must be + or -")]
    InvalidSignature,

    #[error("pattern is reducible")]
    Reducible,

    #[error("pattern has extraneous zero rows/columns at indices {0:?}")]
    Extraneous(Vec<usize>),

    #[error("diagonal block {block} is not in cyclic form: {reason}")]
    NotCyclic { block: usize, reason: String },

    #[error("pattern is not sign k-potent for any k <= {kmax}")]
    NotKPotent { kmax: usize },

    #[error("pattern is not in PPO; violating block pairs {0:?}")]
    NotPpo(Vec<(usize, usize)>),

    #[error("every diagonal block is zero")]
    AllZeroBlocks,

    #[error(
        "single-pass construction needs at most one run of zero diagonal blocks, found {runs}; \
         use the filtered strategy"
    )]
    MultipleZeroRuns { runs: usize },

    #[error("enumeration cap exceeded: {required} candidates at order {n} (cap {cap})")]
    CapExceeded { n: usize, cap: usize, required: String },

    #[error("inconsistent cyclic form: {0}")]
    InconsistentForm(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
