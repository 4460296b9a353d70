use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

/// Hard ceiling on the item count. Explicit valuation tables have `2^m`
/// entries, so this is a memory bound rather than a policy.
pub const MAX_ITEMS: usize = 24;

/// A set of item indices, stored as a bitmask (bit `o` set iff item `o` is a member).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bundle(u32);

impl Bundle {
    pub const EMPTY: Bundle = Bundle(0);

    pub const fn from_mask(mask: u32) -> Self {
        Bundle(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    /// All of `0..m`.
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_ITEMS);
        Bundle(((1u64 << m) - 1) as u32)
    }

    pub fn singleton(o: usize) -> Self {
        Bundle(1 << o)
    }

    pub fn from_items<I: IntoIterator<Item = usize>>(items: I) -> Self {
        items.into_iter().fold(Bundle::EMPTY, |b, o| b.with(o))
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn contains(self, o: usize) -> bool {
        self.0 >> o & 1 == 1
    }

    #[must_use]
    pub const fn with(self, o: usize) -> Self {
        Bundle(self.0 | 1 << o)
    }

    #[must_use]
    pub const fn without(self, o: usize) -> Self {
        Bundle(self.0 & !(1 << o))
    }

    #[must_use]
    pub const fn union(self, other: Bundle) -> Self {
        Bundle(self.0 | other.0)
    }

    #[must_use]
    pub const fn intersection(self, other: Bundle) -> Self {
        Bundle(self.0 & other.0)
    }

    #[must_use]
    pub const fn difference(self, other: Bundle) -> Self {
        Bundle(self.0 & !other.0)
    }

    pub const fn is_disjoint(self, other: Bundle) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn is_subset(self, other: Bundle) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement within `0..m`.
    #[must_use]
    pub fn complement(self, m: usize) -> Self {
        Bundle(Bundle::full(m).0 & !self.0)
    }

    /// True iff every member is below `m`.
    pub fn fits(self, m: usize) -> bool {
        self.is_subset(Bundle::full(m))
    }

    /// Members in ascending order.
    pub fn items(self) -> Items {
        Items(self.0)
    }

    /// Every bundle over `0..m`, in mask order.
    pub fn all(m: usize) -> impl Iterator<Item = Bundle> {
        (0..1u32 << m).map(Bundle)
    }

    /// Every subset of `self`, in increasing mask order, `∅` first.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }
}

#[derive(Clone)]
pub struct Items(u32);

impl Iterator for Items {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let o = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(o)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Items {}

/// Submask enumeration via `(s - universe) & universe`.
#[derive(Clone)]
pub struct Subsets {
    universe: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Bundle;

    fn next(&mut self) -> Option<Bundle> {
        let cur = self.next?;
        self.next = if cur == self.universe {
            None
        } else {
            Some(cur.wrapping_sub(self.universe) & self.universe)
        };
        Some(Bundle(cur))
    }
}

impl fmt::Debug for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.items()).finish()
    }
}

/// Serialised as the ascending list of member indices.
impl Serialize for Bundle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for o in self.items() {
            seq.serialize_element(&o)?;
        }
        seq.end()
    }
}
