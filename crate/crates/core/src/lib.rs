//! Exact fair-division toolkit: fairness axioms under general (possibly
//! non-monotone, non-additive) valuations, item taxonomy, leximin and Pareto
//! search, cut-and-choose, a fixture catalog and a randomized counterexample miner.

pub mod allocation;
pub mod axioms;
pub mod bundle;
pub mod catalog;
pub mod efficiency;
pub mod error;
pub mod format;
pub mod instance;
pub mod properties;
pub mod protocols;
pub mod search;
pub mod taxonomy;
pub mod valuation;
pub mod value;

pub use allocation::{enumerate_allocations, Allocation, DEFAULT_BUDGET};
pub use axioms::{check, AxiomId, Condition, Verdict, Witness};
pub use bundle::Bundle;
pub use error::{Error, Result};
pub use instance::Instance;
pub use valuation::Valuation;
pub use value::Value;
