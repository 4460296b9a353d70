//! Per-allocation property flags over a whole allocation space.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::allocation::{enumerate_allocations, Allocation};
use crate::axioms::{check, check_chen_liu_with, chen_liu_context, AxiomId};
use crate::efficiency::pareto_optimal_flags;
use crate::error::{Error, Result};
use crate::instance::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Axiom(AxiomId),
    Po,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Axiom(a) => a.name(),
            Property::Po => "PO",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("po") {
            Ok(Property::Po)
        } else {
            s.parse().map(Property::Axiom)
        }
    }
}

impl Serialize for Property {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl From<AxiomId> for Property {
    fn from(a: AxiomId) -> Self {
        Property::Axiom(a)
    }
}

/// A conjunction of properties, written `EFX&PO` (`∧` is accepted too).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conjunction(pub Vec<Property>);

impl Conjunction {
    pub fn single(p: impl Into<Property>) -> Self {
        Conjunction(vec![p.into()])
    }

    pub fn of(props: &[Property]) -> Self {
        Conjunction(props.to_vec())
    }
}

impl fmt::Display for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|p| p.name()).collect();
        f.write_str(&names.join("&"))
    }
}

impl FromStr for Conjunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let props = s.split(['&', '∧']).map(str::parse).collect::<Result<Vec<Property>>>()?;
        Ok(Conjunction(props))
    }
}

impl Serialize for Conjunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All allocations of an instance with one flag column per requested property.
#[derive(Clone, Debug)]
pub struct PropertyTable {
    allocations: Vec<Allocation>,
    columns: BTreeMap<Property, Vec<bool>>,
}

impl PropertyTable {
    /// Fails with [`Error::NotWellDefined`] if `CHEN_LIU` is requested on an
    /// instance that does not support it.
    pub fn compute(inst: &Instance, props: &[Property], budget: u64) -> Result<Self> {
        let allocations: Vec<Allocation> = enumerate_allocations(inst, budget)?.collect();
        let mut columns = BTreeMap::new();
        for &p in props {
            if columns.contains_key(&p) {
                continue;
            }
            let column = match p {
                Property::Po => pareto_optimal_flags(inst, budget)?,
                Property::Axiom(AxiomId::ChenLiu) => {
                    let classes = chen_liu_context(inst)?;
                    allocations
                        .iter()
                        .map(|a| check_chen_liu_with(inst, a, &classes).satisfied)
                        .collect()
                }
                Property::Axiom(id) => allocations
                    .iter()
                    .map(|a| check(inst, a, id).map(|v| v.satisfied))
                    .collect::<Result<Vec<_>>>()?,
            };
            columns.insert(p, column);
        }
        Ok(PropertyTable { allocations, columns })
    }

    pub fn allocations(&self) -> &[Allocation] {
        &self.allocations
    }

    pub fn len(&self) -> usize {
        self.allocations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.allocations.is_empty()
    }

    pub fn properties(&self) -> impl Iterator<Item = Property> + '_ {
        self.columns.keys().copied()
    }

    /// Panics if `p` was not computed.
    pub fn holds(&self, k: usize, p: Property) -> bool {
        self.columns
            .get(&p)
            .unwrap_or_else(|| panic!("property {p} was not computed"))[k]
    }

    pub fn satisfies(&self, k: usize, c: &Conjunction) -> bool {
        c.0.iter().all(|&p| self.holds(k, p))
    }

    /// Enumeration indices of the allocations satisfying `c`.
    pub fn matching(&self, c: &Conjunction) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.satisfies(k, c)).collect()
    }

    pub fn count(&self, c: &Conjunction) -> usize {
        (0..self.len()).filter(|&k| self.satisfies(k, c)).count()
    }

    pub fn first(&self, c: &Conjunction) -> Option<&Allocation> {
        (0..self.len())
            .find(|&k| self.satisfies(k, c))
            .map(|k| &self.allocations[k])
    }

    pub fn index_of(&self, alloc: &Allocation) -> Option<usize> {
        self.allocations.iter().position(|a| a == alloc)
    }
}
