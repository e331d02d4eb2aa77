use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Structurally well-formed input that violates a Coxeter-matrix rule.
    #[error("invalid Coxeter matrix: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown or out-of-range type name {name:?}: {reason}")]
    BadName { name: String, reason: String },

    #[error("vertex index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("k = {k} out of range 1..={rank}")]
    RankOutOfRange { k: usize, rank: usize },

    #[error("diagram rank {rank} exceeds the limit of {limit}")]
    RankLimit { rank: usize, limit: usize },

    #[error("subset budget exhausted after examining {examined} subsets (budget {budget})")]
    BudgetExceeded { examined: u64, budget: u64 },

    #[error("{0} is not spherical")]
    NonSpherical(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{diagram}: group enumeration exceeded cap {cap} (reached {reached} elements)")]
    CapExceeded {
        diagram: String,
        cap: usize,
        reached: usize,
    },

    #[error(
        "{diagram}: hash collision between distinct elements at {reached} elements (cap {cap}); \
         tolerance must be adjusted"
    )]
    HashCollision {
        diagram: String,
        cap: usize,
        reached: usize,
    },

    #[error("{diagram}: numerically ambiguous involution rank ({detail})")]
    NumericDegeneracy { diagram: String, detail: String },
}
