use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Every variant maps onto a stable, machine-readable [`Error::category`]
/// which the command-line front end prints as `error:<category>:`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("formula references {0}, which is not part of the space")]
    Unbound(String),

    #[error("{worlds} worlds exceed the exhaustive-evaluation limit of {limit}")]
    Capacity { worlds: u128, limit: u64 },

    #[error("context is unsatisfiable: {0}")]
    ContradictoryContext(String),

    #[error("statements live in different contexts")]
    CrossContext,

    #[error("conditioning on a context with zero probability")]
    ZeroMassContext,

    #[error("observed data has zero prior evidence")]
    ZeroEvidence,

    #[error("invalid belief web: {0}")]
    InvalidWeb(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("propositions are not mutually exclusive: {0}")]
    NotMutuallyExclusive(String),

    #[error("constraints are infeasible: {0}")]
    Infeasible(String),

    #[error("solver did not converge after {iterations} iterations (best residual {best_residual:e})")]
    Convergence { iterations: usize, best_residual: f64 },

    #[error("p > 0 where q = 0; relative entropy diverges")]
    SupportViolation,

    #[error("operation leaves its interval: {0}")]
    Closure(String),

    #[error("operation is not strictly monotone: {0}")]
    Monotonicity(String),

    #[error("operation has no identity element on the grid")]
    MissingIdentity,

    #[error("maps do not satisfy the Pexider equation (residual {residual:e})")]
    NotPexider { residual: f64 },

    #[error("expected {expected} blocks, found {found}")]
    BlockCount { expected: usize, found: usize },

    #[error("relabeling is not a bijection: {0}")]
    NotBijective(String),

    #[error("relabeling mixes values across blocks of the split")]
    NotWithinBlock,

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("{line}:{column}: {message}")]
    Scenario {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Short category tag, stable across releases.
    pub fn category(&self) -> &'static str {
        match self {
            Error::InvalidSpace(_) => "space",
            Error::Unbound(_) => "unbound",
            Error::Capacity { .. } => "capacity",
            Error::ContradictoryContext(_) => "contradictory-context",
            Error::CrossContext => "cross-context",
            Error::ZeroMassContext => "conditioning",
            Error::ZeroEvidence => "zero-evidence",
            Error::InvalidWeb(_) => "web",
            Error::InvalidArgument(_) => "argument",
            Error::NotMutuallyExclusive(_) => "mutual-exclusivity",
            Error::Infeasible(_) => "infeasible",
            Error::Convergence { .. } => "convergence",
            Error::SupportViolation => "support",
            Error::Closure(_) => "closure",
            Error::Monotonicity(_) => "monotonicity",
            Error::MissingIdentity => "structure",
            Error::NotPexider { .. } => "not-pexider",
            Error::BlockCount { .. } => "block-count",
            Error::NotBijective(_) => "bijection",
            Error::NotWithinBlock => "not-within-block",
            Error::Parse { .. } => "parse",
            Error::Scenario { .. } => "scenario",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
