use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::value::Value;

/// One agent's valuation over all bundles of `m` items.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// Table indexed by bundle mask; always `2^m` entries.
    Explicit(Vec<Value>),
    /// One value per item; `v(M)` is the sum over members, `v(∅) = 0`.
    Additive(Vec<Value>),
}

impl Valuation {
    pub fn explicit(table: Vec<Value>) -> Self {
        Valuation::Explicit(table)
    }

    pub fn additive(per_item: Vec<Value>) -> Self {
        Valuation::Additive(per_item)
    }

    /// Explicit table from integers, indexed by mask.
    pub fn from_integers(table: &[i64]) -> Self {
        Valuation::Explicit(table.iter().copied().map(Value::from).collect())
    }

    pub fn additive_from_integers(per_item: &[i64]) -> Self {
        Valuation::Additive(per_item.iter().copied().map(Value::from).collect())
    }

    /// Explicit table whose entry depends only on bundle size.
    pub fn by_cardinality(m: usize, by_size: &[Value]) -> Self {
        assert_eq!(by_size.len(), m + 1, "need one value per bundle size 0..=m");
        Valuation::Explicit(Bundle::all(m).map(|b| by_size[b.len()].clone()).collect())
    }

    /// Item count implied by the representation, if it is well-formed.
    pub fn item_count(&self) -> Option<usize> {
        match self {
            Valuation::Additive(per_item) => Some(per_item.len()),
            Valuation::Explicit(table) => {
                let len = table.len();
                (len.is_power_of_two()).then(|| len.trailing_zeros() as usize)
            }
        }
    }

    pub fn bundle_value(&self, bundle: Bundle) -> Value {
        match self {
            Valuation::Explicit(table) => table[bundle.mask() as usize].clone(),
            Valuation::Additive(per_item) => bundle.items().map(|o| &per_item[o]).sum(),
        }
    }

    /// `v(B ∪ {o}) − v(B)`; `o` must not already be in `B`.
    pub fn marginal(&self, bundle: Bundle, item: usize) -> Result<Value> {
        if bundle.contains(item) {
            return Err(Error::ItemInBundle(item));
        }
        Ok(match self {
            Valuation::Additive(per_item) => per_item[item].clone(),
            Valuation::Explicit(_) => self.bundle_value(bundle.with(item)) - self.bundle_value(bundle),
        })
    }

    /// True iff the valuation equals the additive extension of its singleton values.
    pub fn is_additive_consistent(&self) -> bool {
        match self {
            Valuation::Additive(_) => true,
            Valuation::Explicit(table) => {
                if self.item_count().is_none() || !table[0].is_zero() {
                    return false;
                }
                // v(B) = v(B without its lowest item) + v(lowest item)
                (1..table.len()).all(|mask| {
                    let low = mask & mask.wrapping_neg();
                    low == mask || table[mask] == &table[mask ^ low] + &table[low]
                })
            }
        }
    }

    /// Materialised table indexed by mask.
    pub fn to_table(&self, m: usize) -> Vec<Value> {
        match self {
            Valuation::Explicit(table) => table.clone(),
            Valuation::Additive(_) => Bundle::all(m).map(|b| self.bundle_value(b)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn additive_sums_members() {
        let v = Valuation::additive_from_integers(&[3, -1]);
        assert_eq!(v.bundle_value(Bundle::EMPTY), Value::zero());
        assert_eq!(v.bundle_value(Bundle::from_items([0, 1])), Value::from(2));
        assert_eq!(v.marginal(Bundle::singleton(0), 1).unwrap(), Value::from(-1));
    }

    #[test]
    fn marginal_rejects_member_item() {
        let v = Valuation::additive_from_integers(&[1, 1]);
        assert!(matches!(
            v.marginal(Bundle::singleton(0), 0),
            Err(Error::ItemInBundle(0))
        ));
    }

    #[test]
    fn additive_consistency_of_explicit_tables() {
        // v(∅)=0, v(a)=1, v(b)=2, v(ab)=3
        assert!(Valuation::from_integers(&[0, 1, 2, 3]).is_additive_consistent());
        assert!(!Valuation::from_integers(&[0, 1, 2, 4]).is_additive_consistent());
        assert!(!Valuation::from_integers(&[1, 2, 3, 4]).is_additive_consistent());
    }

    fn arb_table(m: usize) -> impl Strategy<Value = Valuation> {
        proptest::collection::vec(-20i64..20, 1 << m).prop_map(|t| Valuation::from_integers(&t))
    }

    proptest! {
        #[test]
        fn marginals_telescope(v in arb_table(5), base in 0u32..32, o1 in 0usize..5, o2 in 0usize..5) {
            prop_assume!(o1 != o2);
            let b = Bundle::from_mask(base).without(o1).without(o2);
            let direct = v.bundle_value(b.with(o1).with(o2));
            let stepped = v.bundle_value(b)
                + v.marginal(b, o1).unwrap()
                + v.marginal(b.with(o1), o2).unwrap();
            prop_assert_eq!(direct, stepped);
        }

        #[test]
        fn additive_values_split_over_disjoint_bundles(
            per_item in proptest::collection::vec(-20i64..20, 6),
            left in 0u32..64,
            right in 0u32..64,
        ) {
            let v = Valuation::additive_from_integers(&per_item);
            let (l, r) = (Bundle::from_mask(left), Bundle::from_mask(right).difference(Bundle::from_mask(left)));
            prop_assert_eq!(v.bundle_value(l.union(r)), v.bundle_value(l) + v.bundle_value(r));
            let explicit = Valuation::explicit(v.to_table(6));
            prop_assert!(explicit.is_additive_consistent());
        }
    }
}
