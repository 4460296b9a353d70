//! Pareto-optimality and the leximin solution, by exhaustive enumeration.

use std::cmp::Ordering;

use serde::Serialize;

use crate::allocation::{enumerate_allocations, Allocation};
use crate::axioms::Verdict;
use crate::error::{Error, Result};
use crate::instance::{Instance, Level};
use crate::value::Value;

/// The agents' utilities, sorted non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct UtilityVector(Vec<Value>);

impl UtilityVector {
    /// Sorts `values`.
    pub fn new(mut values: Vec<Value>) -> Self {
        values.sort();
        UtilityVector(values)
    }

    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn utility_vector(inst: &Instance, alloc: &Allocation) -> UtilityVector {
    UtilityVector::new(
        (0..inst.agents())
            .map(|i| inst.value(i, alloc.bundle(i)).clone())
            .collect(),
    )
}

/// `Greater` iff `u` leximin-dominates `w`.
pub fn leximin_cmp(u: &UtilityVector, w: &UtilityVector) -> Result<Ordering> {
    if u.len() != w.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: w.len(),
        });
    }
    Ok(u.0.cmp(&w.0))
}

/// Unsorted per-agent levels, `v_i(A_i)` for each `i`.
fn levels(inst: &Instance, alloc: &Allocation) -> Vec<Level> {
    (0..inst.agents()).map(|i| inst.level(i, alloc.bundle(i))).collect()
}

fn sorted_levels(inst: &Instance, alloc: &Allocation) -> Vec<Level> {
    let mut l = levels(inst, alloc);
    l.sort_unstable();
    l
}

fn dominates(b: &[Level], a: &[Level]) -> bool {
    b.iter().zip(a).all(|(x, y)| x >= y) && b != a
}

/// Everyone weakly better off in `b` than in `a`, someone strictly.
pub fn pareto_improves(inst: &Instance, b: &Allocation, a: &Allocation) -> bool {
    dominates(&levels(inst, b), &levels(inst, a))
}

/// Satisfied iff no allocation Pareto-improves `alloc`; otherwise the first
/// improver in enumeration order is attached.
pub fn check_po(inst: &Instance, alloc: &Allocation, budget: u64) -> Result<Verdict> {
    let target = levels(inst, alloc);
    let improver = enumerate_allocations(inst, budget)?.find(|b| dominates(&levels(inst, b), &target));
    Ok(Verdict::from_improvement(improver))
}

/// Every leximin-maximal allocation, in enumeration order.
pub fn leximin_set(inst: &Instance, budget: u64) -> Result<Vec<Allocation>> {
    let mut best: Option<Vec<Level>> = None;
    let mut set = Vec::new();
    for alloc in enumerate_allocations(inst, budget)? {
        let key = sorted_levels(inst, &alloc);
        match best.as_ref().map(|b| key.cmp(b)) {
            Some(Ordering::Less) => continue,
            Some(Ordering::Equal) => set.push(alloc),
            _ => {
                best = Some(key);
                set.clear();
                set.push(alloc);
            }
        }
    }
    Ok(set)
}

/// Pareto-optimality of every allocation, indexed by enumeration position.
///
/// Distinct utility profiles are visited in decreasing lexicographic order,
/// so any dominator of a profile is visited before it; a profile is optimal
/// iff no optimal profile seen so far dominates it.
pub fn pareto_optimal_flags(inst: &Instance, budget: u64) -> Result<Vec<bool>> {
    let profiles: Vec<Vec<Level>> = enumerate_allocations(inst, budget)?.map(|a| levels(inst, &a)).collect();
    let mut distinct = profiles.clone();
    distinct.sort_unstable_by(|a, b| b.cmp(a));
    distinct.dedup();
    let mut frontier: Vec<&Vec<Level>> = Vec::new();
    for p in &distinct {
        if !frontier.iter().any(|f| dominates(f, p)) {
            frontier.push(p);
        }
    }
    frontier.sort_unstable();
    Ok(profiles.iter().map(|p| frontier.binary_search(&p).is_ok()).collect())
}
