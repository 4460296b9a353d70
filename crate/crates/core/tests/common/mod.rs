//! Brute-force reference implementations written directly from the
//! definitions, sharing nothing with the library beyond table lookups.

#![allow(dead_code)]

use fairkit::{Allocation, Bundle, Instance, Value};

pub type Masks = Vec<u32>;

fn v(inst: &Instance, i: usize, s: u32) -> &Value {
    inst.value(i, Bundle::from_mask(s))
}

fn members(s: u32) -> impl Iterator<Item = u32> {
    (0..32).map(|o| 1u32 << o).filter(move |bit| s & bit != 0)
}

/// Every allocation as owner-per-item vectors, agent 0 owning everything first.
pub fn allocations(n: usize, m: usize) -> Vec<Masks> {
    let total = n.pow(m as u32);
    (0..total)
        .map(|mut k| {
            let mut a = vec![0u32; n];
            for o in 0..m {
                a[k % n] |= 1 << o;
                k /= n;
            }
            a
        })
        .collect()
}

pub fn masks(a: &Allocation) -> Masks {
    a.bundles().iter().map(|b| b.mask()).collect()
}

pub fn to_allocation(inst: &Instance, a: &Masks) -> Allocation {
    Allocation::for_instance(inst, a.iter().map(|&s| Bundle::from_mask(s)).collect()).unwrap()
}

fn envy_pairs(inst: &Instance, a: &Masks) -> Vec<(usize, usize)> {
    let n = a.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && v(inst, i, a[i]) < v(inst, i, a[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn ef(inst: &Instance, a: &Masks) -> bool {
    envy_pairs(inst, a).is_empty()
}

pub fn ef1(inst: &Instance, a: &Masks) -> bool {
    envy_pairs(inst, a).into_iter().all(|(i, j)| {
        let (ai, aj) = (a[i], a[j]);
        members(aj).any(|o| v(inst, i, ai) >= v(inst, i, aj & !o))
            || members(ai).any(|o| v(inst, i, ai & !o) >= v(inst, i, aj))
    })
}

pub fn efx(inst: &Instance, a: &Masks) -> bool {
    envy_pairs(inst, a).into_iter().all(|(i, j)| {
        let (ai, aj) = (a[i], a[j]);
        members(aj)
            .filter(|&o| v(inst, i, aj) > v(inst, i, aj & !o))
            .all(|o| v(inst, i, ai) >= v(inst, i, aj & !o))
            && members(ai)
                .filter(|&o| v(inst, i, ai) < v(inst, i, ai & !o))
                .all(|o| v(inst, i, ai & !o) >= v(inst, i, aj))
    })
}

/// Some item that qualifies under the `±` tests also repairs the envy.
pub fn ef1pm(inst: &Instance, a: &Masks) -> bool {
    envy_pairs(inst, a).into_iter().all(|(i, j)| {
        let (ai, aj) = (a[i], a[j]);
        members(aj).any(|o| v(inst, i, ai | o) > v(inst, i, ai) && v(inst, i, ai) >= v(inst, i, aj & !o))
            || members(ai).any(|o| v(inst, i, ai) < v(inst, i, ai & !o) && v(inst, i, ai) >= v(inst, i, aj | o))
    })
}

pub fn efxpm(inst: &Instance, a: &Masks) -> bool {
    envy_pairs(inst, a).into_iter().all(|(i, j)| {
        let (ai, aj) = (a[i], a[j]);
        members(aj)
            .filter(|&o| v(inst, i, ai | o) > v(inst, i, ai))
            .all(|o| v(inst, i, ai) >= v(inst, i, aj & !o))
            && members(ai)
                .filter(|&o| v(inst, i, ai) < v(inst, i, ai & !o))
                .all(|o| v(inst, i, ai) >= v(inst, i, aj | o))
    })
}

fn utilities(inst: &Instance, a: &Masks) -> Vec<Value> {
    a.iter().enumerate().map(|(i, &s)| v(inst, i, s).clone()).collect()
}

fn dominates(b: &[Value], a: &[Value]) -> bool {
    b.iter().zip(a).all(|(x, y)| x >= y) && b.iter().zip(a).any(|(x, y)| x > y)
}

pub fn po(inst: &Instance, a: &Masks) -> bool {
    let ua = utilities(inst, a);
    allocations(inst.agents(), inst.item_count())
        .iter()
        .all(|b| !dominates(&utilities(inst, b), &ua))
}

pub fn sorted_utilities(inst: &Instance, a: &Masks) -> Vec<Value> {
    let mut u = utilities(inst, a);
    u.sort();
    u
}

/// All allocations whose sorted utility vector is lexicographically largest.
pub fn leximin(inst: &Instance) -> Vec<Masks> {
    let all = allocations(inst.agents(), inst.item_count());
    let best = all.iter().map(|a| sorted_utilities(inst, a)).max().unwrap();
    all.into_iter().filter(|a| sorted_utilities(inst, a) == best).collect()
}

pub fn nonzero_marginals(inst: &Instance) -> bool {
    let m = inst.item_count() as u32;
    (0..inst.agents())
        .all(|i| (0..1u32 << m).all(|s| members(((1 << m) - 1) & !s).all(|o| v(inst, i, s | o) != v(inst, i, s))))
}

/// Some agent gains from `o` at some `M` and some agent loses from it at an
/// `N` disjoint from `M`, neither containing `o`.
pub fn mixed(inst: &Instance, o: usize) -> bool {
    let m = inst.item_count() as u32;
    let bit = 1u32 << o;
    let n = inst.agents();
    let rest = ((1u32 << m) - 1) & !bit;
    (0..=rest).filter(|s| s & !rest == 0).any(|mm| {
        (0..n).any(|i| v(inst, i, mm | bit) > v(inst, i, mm))
            && (0..=rest)
                .filter(|t| t & !(rest & !mm) == 0)
                .any(|nn| (0..n).any(|j| v(inst, j, nn | bit) < v(inst, j, nn)))
    })
}

pub fn generally_good(inst: &Instance, i: usize, o: usize) -> bool {
    let bit = 1u32 << o;
    (0..1u32 << inst.item_count())
        .filter(|s| s & bit == 0)
        .all(|s| v(inst, i, s | bit) >= v(inst, i, s))
}

pub fn generally_bad(inst: &Instance, i: usize, o: usize) -> bool {
    let bit = 1u32 << o;
    (0..1u32 << inst.item_count())
        .filter(|s| s & bit == 0)
        .all(|s| v(inst, i, s | bit) <= v(inst, i, s))
}
