use std::collections::HashSet;

use crate::bundle::{Bundle, MAX_ITEMS};
use crate::error::{Error, Result};
use crate::valuation::Valuation;
use crate::value::Value;

/// Default upper bound on the number of items.
pub const DEFAULT_ITEM_CAP: usize = 16;

/// Position of a bundle value in the instance's sorted value domain.
///
/// Levels of any two (agent, bundle) pairs compare exactly as the underlying
/// values do, so the checkers can work on small integers instead of rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(pub u32);

/// `n` agents, `m` named items and one valuation per agent.
#[derive(Clone, Debug)]
pub struct Instance {
    items: Vec<String>,
    valuations: Vec<Valuation>,
    shared: bool,
    domain: Vec<Value>,
    levels: Vec<Vec<Level>>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items && self.valuations == other.valuations
    }
}

fn validate_items(items: &[String], cap: usize) -> Result<()> {
    if items.is_empty() {
        return Err(Error::NoItems);
    }
    let cap = cap.min(MAX_ITEMS);
    if items.len() > cap {
        return Err(Error::TooManyItems {
            items: items.len(),
            cap,
        });
    }
    let mut seen = HashSet::new();
    for name in items {
        if name.is_empty() || name.contains(',') {
            return Err(Error::InvalidItemName(name.clone()));
        }
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateItem(name.clone()));
        }
    }
    Ok(())
}

impl Instance {
    pub fn new(items: Vec<String>, valuations: Vec<Valuation>) -> Result<Self> {
        Self::build(items, valuations, false, DEFAULT_ITEM_CAP)
    }

    pub fn with_item_cap(items: Vec<String>, valuations: Vec<Valuation>, cap: usize) -> Result<Self> {
        Self::build(items, valuations, false, cap)
    }

    /// `agents` copies of one valuation.
    pub fn identical(items: Vec<String>, valuation: Valuation, agents: usize) -> Result<Self> {
        Self::build(items, vec![valuation; agents], true, DEFAULT_ITEM_CAP)
    }

    pub fn identical_with_item_cap(
        items: Vec<String>,
        valuation: Valuation,
        agents: usize,
        cap: usize,
    ) -> Result<Self> {
        Self::build(items, vec![valuation; agents], true, cap)
    }

    fn build(items: Vec<String>, valuations: Vec<Valuation>, shared: bool, cap: usize) -> Result<Self> {
        if valuations.len() < 2 {
            return Err(Error::TooFewAgents(valuations.len()));
        }
        validate_items(&items, cap)?;
        let m = items.len();
        for (agent, v) in valuations.iter().enumerate() {
            let (expected, found) = match v {
                Valuation::Explicit(t) => (1usize << m, t.len()),
                Valuation::Additive(p) => (m, p.len()),
            };
            if expected != found {
                return Err(Error::ValuationSize { agent, expected, found });
            }
        }

        let tables: Vec<Vec<Value>> = valuations.iter().map(|v| v.to_table(m)).collect();
        let mut domain: Vec<Value> = tables.iter().flatten().cloned().collect();
        domain.sort_unstable();
        domain.dedup();
        let levels = tables
            .iter()
            .map(|t| {
                t.iter()
                    .map(|x| Level(domain.binary_search(x).expect("value in domain") as u32))
                    .collect()
            })
            .collect();

        Ok(Instance {
            items,
            valuations,
            shared,
            domain,
            levels,
        })
    }

    pub fn agents(&self) -> usize {
        self.valuations.len()
    }

    pub fn item_count(&self) -> usize {
        self.items.len()
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn item_name(&self, o: usize) -> &str {
        &self.items[o]
    }

    pub fn item_index(&self, name: &str) -> Option<usize> {
        self.items.iter().position(|n| n == name)
    }

    /// Bundle from item names; unknown names are an error.
    pub fn bundle_of(&self, names: &[&str]) -> Result<Bundle> {
        names.iter().try_fold(Bundle::EMPTY, |b, name| {
            self.item_index(name)
                .map(|o| b.with(o))
                .ok_or_else(|| Error::UnknownItem(name.to_string()))
        })
    }

    pub fn full_bundle(&self) -> Bundle {
        Bundle::full(self.items.len())
    }

    pub fn valuations(&self) -> &[Valuation] {
        &self.valuations
    }

    pub fn valuation(&self, agent: usize) -> &Valuation {
        &self.valuations[agent]
    }

    /// Whether the instance was built from a single shared valuation.
    pub fn is_shared(&self) -> bool {
        self.shared
    }

    pub fn value(&self, agent: usize, bundle: Bundle) -> &Value {
        &self.domain[self.levels[agent][bundle.mask() as usize].0 as usize]
    }

    pub fn level(&self, agent: usize, bundle: Bundle) -> Level {
        self.levels[agent][bundle.mask() as usize]
    }

    pub fn level_value(&self, level: Level) -> &Value {
        &self.domain[level.0 as usize]
    }

    /// `v_i(B ∪ {o}) − v_i(B)`.
    pub fn marginal(&self, agent: usize, bundle: Bundle, item: usize) -> Result<Value> {
        if item >= self.item_count() {
            return Err(Error::ItemOutOfRange {
                item,
                items: self.item_count(),
            });
        }
        if bundle.contains(item) {
            return Err(Error::ItemInBundle(item));
        }
        Ok(self.value(agent, bundle.with(item)) - self.value(agent, bundle))
    }

    /// Sign of the marginal as an ordering of `v_i(B ∪ {o})` against `v_i(B)`.
    pub fn marginal_sign(&self, agent: usize, bundle: Bundle, item: usize) -> std::cmp::Ordering {
        self.level(agent, bundle.with(item)).cmp(&self.level(agent, bundle))
    }

    /// All agents agree on every bundle.
    pub fn is_identical(&self) -> bool {
        self.levels.windows(2).all(|w| w[0] == w[1])
    }

    /// Every item changes every agent's value of every bundle not containing it.
    pub fn has_nonzero_marginals(&self) -> bool {
        let m = self.item_count();
        self.levels.iter().all(|table| {
            Bundle::all(m).all(|b| {
                b.complement(m)
                    .items()
                    .all(|o| table[b.with(o).mask() as usize] != table[b.mask() as usize])
            })
        })
    }

    /// The common constant `c` with `v_i(M) + v_i([m]∖M) = c` for every agent and bipartition.
    pub fn disjoint_normalisation(&self) -> Option<Value> {
        let m = self.item_count();
        let full = self.full_bundle();
        let c = self.value(0, Bundle::EMPTY) + self.value(0, full);
        let consistent = (0..self.agents()).all(|i| {
            Bundle::all(m)
                .filter(|b| b.mask() <= b.complement(m).mask())
                .all(|b| self.value(i, b) + self.value(i, full.difference(b)) == c)
        });
        consistent.then_some(c)
    }

    pub fn is_disjointly_normalised(&self) -> bool {
        self.disjoint_normalisation().is_some()
    }

    /// True iff every agent's valuation is additive.
    pub fn is_additive(&self) -> bool {
        self.valuations.iter().all(Valuation::is_additive_consistent)
    }

    /// Same items, every agent using `agent`'s valuation.
    pub fn with_shared_valuation(&self, agent: usize, agents: usize) -> Result<Instance> {
        Self::build(
            self.items.clone(),
            vec![self.valuations[agent].clone(); agents],
            true,
            MAX_ITEMS,
        )
    }

    /// Agents reordered so that new agent `k` is old agent `order[k]`.
    pub fn permute_agents(&self, order: &[usize]) -> Instance {
        let valuations = order.iter().map(|&a| self.valuations[a].clone()).collect();
        Self::build(self.items.clone(), valuations, self.shared, MAX_ITEMS).expect("permutation of a valid instance")
    }

    /// `{a,b}` style rendering using item names.
    pub fn format_bundle(&self, bundle: Bundle) -> String {
        let names: Vec<&str> = bundle.items().map(|o| self.item_name(o)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Item names `a`, `b`, … for generated and built-in instances.
pub fn letter_items(m: usize) -> Vec<String> {
    (0..m)
        .map(|k| {
            if k < 26 {
                char::from(b'a' + k as u8).to_string()
            } else {
                format!("i{k}")
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: &[i64], b: &[i64]) -> Instance {
        Instance::new(
            letter_items(a.len().trailing_zeros() as usize),
            vec![Valuation::from_integers(a), Valuation::from_integers(b)],
        )
        .unwrap()
    }

    #[test]
    fn construction_errors() {
        let one = Valuation::additive_from_integers(&[1]);
        assert!(matches!(
            Instance::new(letter_items(1), vec![one.clone()]),
            Err(Error::TooFewAgents(1))
        ));
        assert!(matches!(
            Instance::new(vec![], vec![one.clone(), one.clone()]),
            Err(Error::NoItems)
        ));
        assert!(matches!(
            Instance::new(
                vec!["a".into(), "a".into()],
                vec![Valuation::additive_from_integers(&[1, 1]); 2]
            ),
            Err(Error::DuplicateItem(_))
        ));
        assert!(matches!(
            Instance::new(vec!["a,b".into()], vec![one.clone(), one.clone()]),
            Err(Error::InvalidItemName(_))
        ));
        assert!(matches!(
            Instance::new(letter_items(2), vec![one.clone(), one]),
            Err(Error::ValuationSize {
                agent: 0,
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            Instance::new(letter_items(17), vec![Valuation::additive_from_integers(&[1; 17]); 2]),
            Err(Error::TooManyItems { items: 17, cap: 16 })
        ));
        assert!(Instance::with_item_cap(
            letter_items(17),
            vec![Valuation::additive_from_integers(&[1; 17]); 2],
            17
        )
        .is_ok());
    }

    #[test]
    fn single_item_is_accepted() {
        let inst = Instance::identical(letter_items(1), Valuation::additive_from_integers(&[0]), 2).unwrap();
        assert_eq!(inst.item_count(), 1);
        assert!(inst.is_identical());
    }

    #[test]
    fn levels_preserve_cross_agent_order() {
        let inst = pair(&[0, 5, -3, 2], &[0, 1, 7, -9]);
        for i in 0..2 {
            for j in 0..2 {
                for a in Bundle::all(2) {
                    for b in Bundle::all(2) {
                        assert_eq!(
                            inst.level(i, a).cmp(&inst.level(j, b)),
                            inst.value(i, a).cmp(inst.value(j, b))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn identical_detection_ignores_representation() {
        let add = Valuation::additive_from_integers(&[1, 2]);
        let exp = Valuation::from_integers(&[0, 1, 2, 3]);
        let inst = Instance::new(letter_items(2), vec![add, exp]).unwrap();
        assert!(inst.is_identical());
        assert!(!pair(&[0, 1, 2, 3], &[0, 1, 2, 4]).is_identical());
    }

    #[test]
    fn additive_instances_are_disjointly_normalised_when_totals_match() {
        let inst = Instance::identical(letter_items(3), Valuation::additive_from_integers(&[2, -1, 4]), 3).unwrap();
        assert_eq!(inst.disjoint_normalisation(), Some(Value::from(5)));
        let skew = Instance::new(
            letter_items(2),
            vec![
                Valuation::additive_from_integers(&[1, 1]),
                Valuation::additive_from_integers(&[1, 2]),
            ],
        )
        .unwrap();
        assert_eq!(skew.disjoint_normalisation(), None);
    }

    #[test]
    fn zero_item_value_means_zero_marginal() {
        let inst = Instance::identical(letter_items(2), Valuation::additive_from_integers(&[0, 1]), 2).unwrap();
        assert!(!inst.has_nonzero_marginals());
        let inst = Instance::identical(letter_items(2), Valuation::additive_from_integers(&[-2, 1]), 2).unwrap();
        assert!(inst.has_nonzero_marginals());
    }
}
