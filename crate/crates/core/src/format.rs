//! JSON instance and allocation documents.
//!
//! ```json
//! {
//!   "items": ["a", "b"],
//!   "identical": true,
//!   "valuations": [
//!     { "kind": "explicit", "values": { "a": "-1", "b": "-1", "a,b": "2" } }
//!   ]
//! }
//! ```
//!
//! Explicit tables are keyed by item names joined with `,` in the order of
//! `items`; `""` is the empty bundle and may be omitted (it then defaults to
//! 0). Additive valuations are keyed by item name. Values are strings (`"5"`,
//! `"1.5"`, `"3/2"`) or JSON integers. With `"identical": true` exactly one
//! valuation is given and `agents` (default 2) sets the agent count.
//!
//! [`export_instance`] writes the canonical form: two-space indentation,
//! entries in bundle-mask order, `""` only when `v(∅) ≠ 0`, `agents` only when
//! it is not 2.

use std::collections::HashSet;
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::allocation::Allocation;
use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::valuation::Valuation;
use crate::value::Value;

/// Map entries in document order, duplicates kept so they can be reported.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Entries(pub Vec<(String, Value)>);

impl Serialize for Entries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Entries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct EntriesVisitor;

        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = Entries;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping keys to values")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Entries, A::Error> {
                let mut entries = Vec::new();
                while let Some(entry) = map.next_entry::<String, Value>()? {
                    entries.push(entry);
                }
                Ok(Entries(entries))
            }
        }

        deserializer.deserialize_map(EntriesVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ValuationDocument {
    Explicit { values: Entries },
    Additive { values: Entries },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub items: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identical: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agents: Option<usize>,
    pub valuations: Vec<ValuationDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AllocationDocument {
    pub bundles: Vec<Vec<String>>,
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

/// Canonical key of a bundle: member names in item order, joined by `,`.
pub fn bundle_key(items: &[String], bundle: Bundle) -> String {
    bundle.items().map(|o| items[o].as_str()).collect::<Vec<_>>().join(",")
}

/// Inverse of [`bundle_key`]; rejects unknown names, repeats and out-of-order names.
pub fn parse_bundle_key(items: &[String], key: &str) -> Result<Bundle> {
    if key.is_empty() {
        return Ok(Bundle::EMPTY);
    }
    let mut bundle = Bundle::EMPTY;
    let mut last = None;
    for name in key.split(',') {
        let o = items
            .iter()
            .position(|it| it == name)
            .ok_or_else(|| doc_err(format!("bundle key {key:?}: unknown item {name:?}")))?;
        if last.is_some_and(|l| o <= l) {
            return Err(doc_err(format!(
                "bundle key {key:?} must list items once each, in the order of \"items\""
            )));
        }
        last = Some(o);
        bundle = bundle.with(o);
    }
    Ok(bundle)
}

fn build_valuation(items: &[String], doc: &ValuationDocument, agent: usize) -> Result<Valuation> {
    let m = items.len();
    match doc {
        ValuationDocument::Additive { values } => {
            let mut per_item: Vec<Option<Value>> = vec![None; m];
            for (name, v) in &values.0 {
                let o = items
                    .iter()
                    .position(|it| it == name)
                    .ok_or_else(|| doc_err(format!("valuation {agent}: unknown item {name:?}")))?;
                if per_item[o].replace(v.clone()).is_some() {
                    return Err(doc_err(format!("valuation {agent}: duplicate item {name:?}")));
                }
            }
            let per_item = per_item
                .into_iter()
                .enumerate()
                .map(|(o, v)| v.ok_or_else(|| doc_err(format!("valuation {agent}: no value for item {:?}", items[o]))))
                .collect::<Result<Vec<_>>>()?;
            Ok(Valuation::additive(per_item))
        }
        ValuationDocument::Explicit { values } => {
            let mut table: Vec<Option<Value>> = vec![None; 1 << m];
            for (key, v) in &values.0 {
                let b = parse_bundle_key(items, key).map_err(|e| doc_err(format!("valuation {agent}: {e}")))?;
                if table[b.mask() as usize].replace(v.clone()).is_some() {
                    return Err(doc_err(format!("valuation {agent}: duplicate bundle key {key:?}")));
                }
            }
            table[0].get_or_insert_with(Value::zero);
            let table = table
                .into_iter()
                .enumerate()
                .map(|(mask, v)| {
                    v.ok_or_else(|| {
                        doc_err(format!(
                            "valuation {agent}: no value for bundle {:?}",
                            bundle_key(items, Bundle::from_mask(mask as u32))
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Valuation::explicit(table))
        }
    }
}

impl InstanceDocument {
    pub fn to_instance(&self) -> Result<Instance> {
        if self.items.len() > crate::instance::DEFAULT_ITEM_CAP {
            return Err(Error::TooManyItems {
                items: self.items.len(),
                cap: crate::instance::DEFAULT_ITEM_CAP,
            });
        }
        if self.items.is_empty() {
            return Err(Error::NoItems);
        }
        let mut seen = HashSet::new();
        if let Some(dup) = self.items.iter().find(|it| !seen.insert(it.as_str())) {
            return Err(Error::DuplicateItem(dup.clone()));
        }
        if self.identical == Some(true) {
            if self.valuations.len() != 1 {
                return Err(doc_err(format!(
                    "\"identical\": true needs exactly one valuation, found {}",
                    self.valuations.len()
                )));
            }
            let v = build_valuation(&self.items, &self.valuations[0], 0)?;
            Instance::identical(self.items.clone(), v, self.agents.unwrap_or(2))
        } else {
            if let Some(n) = self.agents {
                if n != self.valuations.len() {
                    return Err(doc_err(format!(
                        "\"agents\" is {n} but {} valuations are given",
                        self.valuations.len()
                    )));
                }
            }
            let vals = self
                .valuations
                .iter()
                .enumerate()
                .map(|(i, d)| build_valuation(&self.items, d, i))
                .collect::<Result<Vec<_>>>()?;
            Instance::new(self.items.clone(), vals)
        }
    }

    pub fn from_instance(inst: &Instance) -> Self {
        let items = inst.items().to_vec();
        let m = items.len();
        let doc_of = |v: &Valuation| match v {
            Valuation::Additive(per_item) => ValuationDocument::Additive {
                values: Entries(items.iter().cloned().zip(per_item.iter().cloned()).collect()),
            },
            Valuation::Explicit(table) => ValuationDocument::Explicit {
                values: Entries(
                    Bundle::all(m)
                        .filter(|b| !b.is_empty() || !table[0].is_zero())
                        .map(|b| (bundle_key(&items, b), table[b.mask() as usize].clone()))
                        .collect(),
                ),
            },
        };
        if inst.is_shared() {
            InstanceDocument {
                items: items.clone(),
                identical: Some(true),
                agents: (inst.agents() != 2).then_some(inst.agents()),
                valuations: vec![doc_of(inst.valuation(0))],
            }
        } else {
            InstanceDocument {
                items: items.clone(),
                identical: None,
                agents: None,
                valuations: inst.valuations().iter().map(doc_of).collect(),
            }
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    serde_json::from_str::<InstanceDocument>(text)?.to_instance()
}

/// Canonical pretty JSON, newline-terminated.
pub fn export_instance(inst: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceDocument::from_instance(inst)).expect("documents serialise");
    s.push('\n');
    s
}

impl AllocationDocument {
    pub fn to_allocation(&self, inst: &Instance) -> Result<Allocation> {
        let bundles = self
            .bundles
            .iter()
            .map(|names| {
                let mut b = Bundle::EMPTY;
                for name in names {
                    let o = inst.item_index(name).ok_or_else(|| Error::UnknownItem(name.clone()))?;
                    if b.contains(o) {
                        return Err(Error::NotAPartition(format!("item {name:?} listed twice")));
                    }
                    b = b.with(o);
                }
                Ok(b)
            })
            .collect::<Result<Vec<_>>>()?;
        Allocation::for_instance(inst, bundles)
    }

    pub fn from_allocation(inst: &Instance, alloc: &Allocation) -> Self {
        AllocationDocument {
            bundles: alloc
                .bundles()
                .iter()
                .map(|b| b.items().map(|o| inst.item_name(o).to_string()).collect())
                .collect(),
        }
    }
}

pub fn parse_allocation(inst: &Instance, text: &str) -> Result<Allocation> {
    serde_json::from_str::<AllocationDocument>(text)?.to_allocation(inst)
}

/// Bundles as lists of item names, for reports.
pub fn allocation_names(inst: &Instance, alloc: &Allocation) -> Vec<Vec<String>> {
    AllocationDocument::from_allocation(inst, alloc).bundles
}
