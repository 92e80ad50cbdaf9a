use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CopicError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid instance: {}", .0.join("; "))]
    InvalidInstance(Vec<String>),
    #[error("enumeration too large: more than {cap} sets")]
    EnumerationTooLarge { cap: u64 },
    #[error("resource limit exceeded: {what} needs more than {cap}")]
    ResourceLimit { what: String, cap: u64 },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition unmet: {0}")]
    Precondition(String),
    #[error("negative-cost cycle through vertices {cycle:?}")]
    NegativeCycle { cycle: Vec<usize> },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("cannot parse cost {0:?}")]
    ParseCost(String),
}

pub type Result<T, E = CopicError> = std::result::Result<T, E>;
