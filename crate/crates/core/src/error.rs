use thiserror::Error;

use crate::value::ParseValueError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("an instance needs at least 2 agents, got {0}")]
    TooFewAgents(usize),
    #[error("an instance needs at least 1 item")]
    NoItems,
    #[error("{items} items exceeds the configured cap of {cap}")]
    TooManyItems { items: usize, cap: usize },
    #[error("duplicate item name {0:?}")]
    DuplicateItem(String),
    #[error("invalid item name {0:?}: names must be non-empty and must not contain ','")]
    InvalidItemName(String),
    #[error("unknown item {0:?}")]
    UnknownItem(String),
    #[error("agent {agent}: valuation has {found} entries, expected {expected}")]
    ValuationSize {
        agent: usize,
        expected: usize,
        found: usize,
    },
    #[error("item {item} is out of range for {items} items")]
    ItemOutOfRange { item: usize, items: usize },
    #[error("item {0} is already in the bundle")]
    ItemInBundle(usize),
    #[error("agent {agent} is out of range for {agents} agents")]
    AgentOutOfRange { agent: usize, agents: usize },
    #[error("not a complete allocation: {0}")]
    NotAPartition(String),
    #[error("an agent cannot envy itself (agent {0})")]
    SameAgent(usize),
    #[error("{required} allocations exceeds the enumeration budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("not well-defined: {0}")]
    NotWellDefined(String),
    #[error("utility vectors differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
    #[error("no instance satisfying the constraints after {attempts} attempts")]
    RejectionBudget { attempts: u64 },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("invalid document: {0}")]
    Document(String),
    #[error(transparent)]
    Value(#[from] ParseValueError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
