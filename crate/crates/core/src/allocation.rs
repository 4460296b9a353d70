//! Complete allocations and the allocation space.
//!
//! Enumeration order is fixed: allocation number `k` assigns item `o` to agent
//! `(k / n^o) mod n`, i.e. the assignment vector counts in base `n` with item 0
//! as the least significant digit. The first allocation gives everything to
//! agent 0. Leximin tie-sets, landscape examples and reports all inherit this
//! order.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::instance::Instance;

/// Default cap on `n^m` for exhaustive scans.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Ordered partition of all items into one bundle per agent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Allocation {
    bundles: Vec<Bundle>,
}

impl Allocation {
    /// Validates that `bundles` partition `0..m`.
    pub fn new(bundles: Vec<Bundle>, items: usize) -> Result<Self> {
        let mut seen = Bundle::EMPTY;
        for (agent, &b) in bundles.iter().enumerate() {
            if !b.fits(items) {
                return Err(Error::NotAPartition(format!(
                    "bundle of agent {agent} references items beyond {items}"
                )));
            }
            if !seen.is_disjoint(b) {
                return Err(Error::NotAPartition(format!(
                    "bundle of agent {agent} overlaps an earlier bundle"
                )));
            }
            seen = seen.union(b);
        }
        if seen != Bundle::full(items) {
            return Err(Error::NotAPartition(format!(
                "items {:?} are unassigned",
                Bundle::full(items).difference(seen)
            )));
        }
        Ok(Allocation { bundles })
    }

    /// Validates against an instance's agent and item counts.
    pub fn for_instance(inst: &Instance, bundles: Vec<Bundle>) -> Result<Self> {
        if bundles.len() != inst.agents() {
            return Err(Error::NotAPartition(format!(
                "{} bundles for {} agents",
                bundles.len(),
                inst.agents()
            )));
        }
        Allocation::new(bundles, inst.item_count())
    }

    /// Allocation from per-agent lists of item names.
    pub fn from_names(inst: &Instance, bundles: &[&[&str]]) -> Result<Self> {
        let bundles = bundles
            .iter()
            .map(|names| inst.bundle_of(names))
            .collect::<Result<Vec<_>>>()?;
        Allocation::for_instance(inst, bundles)
    }

    /// The assignment vector: `owner[o]` is the agent holding item `o`.
    pub fn from_owners(owners: &[usize], agents: usize) -> Result<Self> {
        let mut bundles = vec![Bundle::EMPTY; agents];
        for (o, &a) in owners.iter().enumerate() {
            if a >= agents {
                return Err(Error::AgentOutOfRange { agent: a, agents });
            }
            bundles[a] = bundles[a].with(o);
        }
        Ok(Allocation { bundles })
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub fn bundle(&self, agent: usize) -> Bundle {
        self.bundles[agent]
    }

    pub fn agents(&self) -> usize {
        self.bundles.len()
    }

    pub fn owner(&self, item: usize) -> Option<usize> {
        self.bundles.iter().position(|b| b.contains(item))
    }

    /// Position in the canonical enumeration order.
    pub fn index(&self, items: usize) -> u128 {
        let n = self.bundles.len() as u128;
        (0..items)
            .rev()
            .fold(0u128, |acc, o| acc * n + self.owner(o).unwrap_or(0) as u128)
    }

    /// Agents relabelled: new agent `k` receives old agent `order[k]`'s bundle.
    pub fn permute_agents(&self, order: &[usize]) -> Allocation {
        Allocation {
            bundles: order.iter().map(|&a| self.bundles[a]).collect(),
        }
    }

    pub fn format(&self, inst: &Instance) -> String {
        let parts: Vec<String> = self.bundles.iter().map(|&b| inst.format_bundle(b)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Serialised as one ascending index list per agent.
impl Serialize for Allocation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.bundles.serialize(serializer)
    }
}

impl fmt::Debug for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Allocation").field(&self.bundles).finish()
    }
}

/// `n^m`, or `None` on overflow.
pub fn allocation_count(agents: usize, items: usize) -> Option<u128> {
    (agents as u128).checked_pow(items as u32)
}

/// Errors with [`Error::BudgetExceeded`] when `n^m` is above `budget`.
pub fn check_budget(agents: usize, items: usize, budget: u64) -> Result<u64> {
    match allocation_count(agents, items) {
        Some(count) if count <= budget as u128 => Ok(count as u64),
        count => Err(Error::BudgetExceeded {
            required: count.unwrap_or(u128::MAX),
            budget,
        }),
    }
}

/// Every complete allocation of `inst`, in canonical order.
pub fn enumerate_allocations(inst: &Instance, budget: u64) -> Result<Allocations> {
    check_budget(inst.agents(), inst.item_count(), budget)?;
    Ok(Allocations::new(inst.agents(), inst.item_count()))
}

/// Base-`n` odometer over assignment vectors, updating bundles incrementally.
pub struct Allocations {
    owners: Vec<usize>,
    bundles: Vec<Bundle>,
    agents: usize,
    done: bool,
}

impl Allocations {
    pub fn new(agents: usize, items: usize) -> Self {
        let mut bundles = vec![Bundle::EMPTY; agents];
        bundles[0] = Bundle::full(items);
        Allocations {
            owners: vec![0; items],
            bundles,
            agents,
            done: false,
        }
    }
}

impl Iterator for Allocations {
    type Item = Allocation;

    fn next(&mut self) -> Option<Allocation> {
        if self.done {
            return None;
        }
        let current = Allocation {
            bundles: self.bundles.clone(),
        };
        // advance the odometer
        self.done = true;
        for o in 0..self.owners.len() {
            let from = self.owners[o];
            let to = (from + 1) % self.agents;
            self.bundles[from] = self.bundles[from].without(o);
            self.bundles[to] = self.bundles[to].with(o);
            self.owners[o] = to;
            if to != 0 {
                self.done = false;
                break;
            }
        }
        Some(current)
    }
}
