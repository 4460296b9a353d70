//! Item and problem classification.
//!
//! An item is *good* for agent `i` with respect to `M` when adding it does not
//! lower `v_i(M)`, and *bad* when adding it does not raise it. It is
//! *generally* good (bad) when that holds for every `M` not containing it, and
//! *mixed* when some agent strictly gains from it on one bundle while some
//! agent (possibly the same one) strictly loses from it on a disjoint bundle.
//! Everything here is brute force over subsets.

use std::cmp::Ordering;

use serde::Serialize;

use crate::bundle::Bundle;
use crate::instance::Instance;
use crate::value::Value;

/// `v_i(M ∪ {o}) ≥ v_i(M)`. Trivially true when `o ∈ M`.
pub fn is_good_wrt(inst: &Instance, agent: usize, item: usize, bundle: Bundle) -> bool {
    inst.marginal_sign(agent, bundle, item) != Ordering::Less
}

/// `v_i(M ∪ {o}) ≤ v_i(M)`. Trivially true when `o ∈ M`.
pub fn is_bad_wrt(inst: &Instance, agent: usize, item: usize, bundle: Bundle) -> bool {
    inst.marginal_sign(agent, bundle, item) != Ordering::Greater
}

fn others(inst: &Instance, item: usize) -> Bundle {
    inst.full_bundle().without(item)
}

pub fn is_generally_good(inst: &Instance, agent: usize, item: usize) -> bool {
    others(inst, item).subsets().all(|m| is_good_wrt(inst, agent, item, m))
}

pub fn is_generally_bad(inst: &Instance, agent: usize, item: usize) -> bool {
    others(inst, item).subsets().all(|m| is_bad_wrt(inst, agent, item, m))
}

/// One side of a mixedness witness: agent, bundle and the strict marginal there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarginalAt {
    pub agent: usize,
    pub bundle: Bundle,
    pub marginal: Value,
}

/// Disjoint bundles on which the item has a strictly positive and a strictly
/// negative marginal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedWitness {
    pub item: usize,
    pub positive: MarginalAt,
    pub negative: MarginalAt,
}

impl MixedWitness {
    /// Re-checks the witness against the instance from scratch.
    pub fn is_valid(&self, inst: &Instance) -> bool {
        let (p, n, o) = (&self.positive, &self.negative, self.item);
        let agents = inst.agents();
        p.agent < agents
            && n.agent < agents
            && o < inst.item_count()
            && p.bundle.fits(inst.item_count())
            && n.bundle.fits(inst.item_count())
            && !p.bundle.contains(o)
            && !n.bundle.contains(o)
            && p.bundle.is_disjoint(n.bundle)
            && inst.marginal(p.agent, p.bundle, o).ok().as_ref() == Some(&p.marginal)
            && inst.marginal(n.agent, n.bundle, o).ok().as_ref() == Some(&n.marginal)
            && p.marginal.is_positive()
            && n.marginal.is_negative()
    }
}

fn first_agent_with(inst: &Instance, item: usize, bundle: Bundle, sign: Ordering) -> Option<usize> {
    (0..inst.agents()).find(|&i| inst.marginal_sign(i, bundle, item) == sign)
}

/// First witness of mixedness, scanning the positive side in mask order.
pub fn mixed_witness(inst: &Instance, item: usize) -> Option<MixedWitness> {
    let m = inst.item_count();
    let size = 1usize << m;
    let rest = others(inst, item);

    // below[U] = some N ⊆ U with a strictly negative marginal (stored as mask + 1, 0 = none)
    let mut below = vec![0u32; size];
    for n in rest.subsets() {
        if first_agent_with(inst, item, n, Ordering::Less).is_some() {
            below[n.mask() as usize] = n.mask() + 1;
        }
    }
    for bit in 0..m {
        for u in 0..size {
            if u >> bit & 1 == 1 && below[u] == 0 {
                below[u] = below[u ^ 1 << bit];
            }
        }
    }

    rest.subsets().find_map(|pos| {
        let pos_agent = first_agent_with(inst, item, pos, Ordering::Greater)?;
        let room = rest.difference(pos);
        let neg = Bundle::from_mask(below[room.mask() as usize].checked_sub(1)?);
        let neg_agent = first_agent_with(inst, item, neg, Ordering::Less)?;
        Some(MixedWitness {
            item,
            positive: MarginalAt {
                agent: pos_agent,
                bundle: pos,
                marginal: inst.marginal(pos_agent, pos, item).ok()?,
            },
            negative: MarginalAt {
                agent: neg_agent,
                bundle: neg,
                marginal: inst.marginal(neg_agent, neg, item).ok()?,
            },
        })
    })
}

pub fn is_mixed(inst: &Instance, item: usize) -> bool {
    mixed_witness(inst, item).is_some()
}

/// Per (agent, item) general goodness/badness and per-item mixedness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ItemClassMatrix {
    /// `generally_good[agent][item]`
    pub generally_good: Vec<Vec<bool>>,
    pub generally_bad: Vec<Vec<bool>>,
    pub mixed: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProblemClass {
    /// Every (agent, item) pair is generally good or generally bad.
    pub generally_good_bad_items: bool,
    /// No item is mixed.
    pub no_mixed_items: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub class: ProblemClass,
    pub matrix: ItemClassMatrix,
    /// One witness per mixed item, `None` for the others.
    pub witnesses: Vec<Option<MixedWitness>>,
}

pub fn classify(inst: &Instance) -> Classification {
    let (n, m) = (inst.agents(), inst.item_count());
    let generally_good: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..m).map(|o| is_generally_good(inst, i, o)).collect())
        .collect();
    let generally_bad: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..m).map(|o| is_generally_bad(inst, i, o)).collect())
        .collect();
    let witnesses: Vec<Option<MixedWitness>> = (0..m).map(|o| mixed_witness(inst, o)).collect();
    let mixed: Vec<bool> = witnesses.iter().map(Option::is_some).collect();

    let generally_good_bad_items = (0..n).all(|i| (0..m).all(|o| generally_good[i][o] || generally_bad[i][o]));
    let no_mixed_items = !mixed.iter().any(|&x| x);
    Classification {
        class: ProblemClass {
            generally_good_bad_items,
            no_mixed_items,
        },
        matrix: ItemClassMatrix {
            generally_good,
            generally_bad,
            mixed,
        },
        witnesses,
    }
}
