use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power in the supported range (q <= 256)")]
    NotPrimePower(u64),
    #[error("division by zero in F_{0}")]
    DivisionByZero(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("operands live over different fields (F_{0} vs F_{1})")]
    FieldMismatch(usize, usize),
    #[error("quiver: {0}")]
    Quiver(String),
    #[error("quiver has an oriented cycle through {0:?}")]
    Cycle(Vec<String>),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
    #[error("malformed cache file: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
