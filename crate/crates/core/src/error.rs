use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("undecidable membership: {0}")]
    UndecidableMembership(String),
    #[error("undecidable equality: {0}")]
    UndecidableEquality(String),
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),
    #[error("base graph is disconnected")]
    DisconnectedBase,
    #[error("disconnected: {0}")]
    Disconnected(String),
    #[error("peripheral generator `{0}` is not in the ambient generating set")]
    PeripheralNotInGeneratingSet(String),
    #[error("cell complex is not regular: {0}")]
    NonRegularComplex(String),
    #[error("invalid maximal tree: {0}")]
    InvalidTree(String),
    #[error("cocycle conditions fail: {0}")]
    CocycleInvalid(String),
    #[error("action violation: {0}")]
    ActionViolation(String),
    #[error("group action unavailable on this development")]
    ActionUnavailable,
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("development is not a tree")]
    NotATree,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
