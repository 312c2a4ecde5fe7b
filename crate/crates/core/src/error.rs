use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0} (need d >= 2)")]
    InvalidDimension(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("walk is not self-avoiding")]
    NotSelfAvoiding,

    #[error("walk does not start at the origin")]
    NotAtOrigin,

    #[error("walk does not close")]
    NotClosing,

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error(
        "exact enumeration infeasible: n={n}, d={d} predicts {predicted:.3e} nodes, budget is {budget:.3e}"
    )]
    Guardrail {
        n: usize,
        d: usize,
        predicted: f64,
        budget: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("prefix has no completions of the requested length")]
    NoCompletions,

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("walks do not belong to the same shell")]
    ShellMismatch,

    #[error("slot budget exceeded: {slots} slots, at most {max} supported")]
    SlotBudget { slots: usize, max: usize },

    #[error("overlapping pattern occurrences: {0}")]
    PatternOverlap(String),

    #[error("pattern search failed: {0}")]
    PatternSearch(String),
}
