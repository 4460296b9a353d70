//! Random instance generation and counterexample mining.
//!
//! Randomness comes from SplitMix64 (`rand_xoshiro::SplitMix64`), seeded with
//! the 64-bit seed directly; the `k`-th instance of a mining run uses seed
//! `seed + k` (wrapping). Integers are drawn with `rand`'s uniform range
//! sampling.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::Serialize;

use crate::allocation::{check_budget, Allocation};
use crate::axioms::AxiomId;
use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::format::InstanceDocument;
use crate::instance::{letter_items, Instance, DEFAULT_ITEM_CAP};
use crate::properties::{Conjunction, Property, PropertyTable};
use crate::taxonomy::classify;
use crate::valuation::Valuation;

/// Candidate instances drawn before giving up on a seed.
pub const DEFAULT_MAX_ATTEMPTS: u64 = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ItemClass {
    #[default]
    Any,
    GenerallyGoodBad,
    NoMixed,
}

impl FromStr for ItemClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "any" => Ok(ItemClass::Any),
            "generally-good-bad" => Ok(ItemClass::GenerallyGoodBad),
            "no-mixed" => Ok(ItemClass::NoMixed),
            _ => Err(Error::InvalidParams(format!(
                "item class {s:?} (expected any, generally-good-bad or no-mixed)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenParams {
    pub agents: usize,
    pub items: usize,
    /// Inclusive integer range for drawn values.
    pub lo: i64,
    pub hi: i64,
    pub identical: bool,
    pub additive: bool,
    pub nonzero_marginals: bool,
    pub disjointly_normalised: bool,
    pub item_class: ItemClass,
    pub seed: u64,
    pub max_attempts: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            agents: 2,
            items: 4,
            lo: -5,
            hi: 5,
            identical: false,
            additive: false,
            nonzero_marginals: false,
            disjointly_normalised: false,
            item_class: ItemClass::Any,
            seed: 0,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }
}

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.agents < 2 {
            return bad(format!("need at least 2 agents, got {}", self.agents));
        }
        if self.items == 0 || self.items > DEFAULT_ITEM_CAP {
            return bad(format!("items must be in 1..={DEFAULT_ITEM_CAP}, got {}", self.items));
        }
        if self.lo > self.hi {
            return bad(format!("empty value range {}..={}", self.lo, self.hi));
        }
        if self.nonzero_marginals && self.lo == 0 && self.hi == 0 {
            return bad("non-zero marginals need a value range other than 0..=0".to_string());
        }
        if self.max_attempts == 0 {
            return bad("max_attempts must be positive".to_string());
        }
        Ok(())
    }

    /// The parameters for the `k`-th instance of a run.
    pub fn with_offset(&self, k: u64) -> GenParams {
        GenParams {
            seed: self.seed.wrapping_add(k),
            ..self.clone()
        }
    }
}

struct Draw<'a> {
    p: &'a GenParams,
    rng: SplitMix64,
}

impl Draw<'_> {
    fn int(&mut self) -> i64 {
        self.rng.random_range(self.p.lo..=self.p.hi)
    }

    fn nonzero(&mut self) -> i64 {
        loop {
            let x = self.int();
            if x != 0 {
                return x;
            }
        }
    }

    /// Draw restricted to the sign of a designated good (`true`) or bad item.
    fn signed(&mut self, good: bool) -> Option<i64> {
        let (lo, hi) = if good {
            (self.p.lo.max(0), self.p.hi)
        } else {
            (self.p.lo, self.p.hi.min(0))
        };
        let nonzero = self.p.nonzero_marginals;
        let (lo, hi) = match (nonzero, good) {
            (true, true) => (lo.max(1), hi),
            (true, false) => (lo, hi.min(-1)),
            _ => (lo, hi),
        };
        (lo <= hi).then(|| self.rng.random_range(lo..=hi))
    }

    fn additive(&mut self, total: Option<i64>, signs: Option<&[bool]>) -> Option<Vec<i64>> {
        let m = self.p.items;
        let mut per_item = Vec::with_capacity(m);
        for o in 0..m {
            per_item.push(match signs {
                Some(signs) => self.signed(signs[o])?,
                None if self.p.nonzero_marginals => self.nonzero(),
                None => self.int(),
            });
        }
        if let Some(c) = total {
            per_item[m - 1] = c - per_item[..m - 1].iter().sum::<i64>();
        }
        Some(per_item)
    }

    fn normalised_table(&mut self, c: i64) -> Vec<i64> {
        let m = self.p.items;
        let full = Bundle::full(m);
        let mut table = vec![0i64; 1 << m];
        for s in Bundle::all(m) {
            let comp = full.difference(s);
            if s.mask() < comp.mask() {
                let x = self.int();
                table[s.mask() as usize] = x;
                table[comp.mask() as usize] = c - x;
            }
        }
        table
    }

    /// `v(∅) = 0`, entries drawn in mask order so every one-smaller subset is
    /// known. With non-zero marginals an entry avoids those subsets' values.
    /// With `signs`, `v(S)` is drawn between `max v(S∖g)` over designated goods
    /// and `min v(S∖b)` over designated bads, which makes each item generally
    /// good or generally bad. The interval is never empty: `v(T∪b) ≤ v(T) ≤ v(T∪g)`.
    fn general_table(&mut self, signs: Option<&[bool]>) -> Option<Vec<i64>> {
        let m = self.p.items;
        let strict = i64::from(self.p.nonzero_marginals);
        let mut table = vec![0i64; 1 << m];
        for s in Bundle::all(m).skip(1) {
            let below = |o: usize| table[s.without(o).mask() as usize];
            table[s.mask() as usize] = if let Some(signs) = signs {
                let lo = s
                    .items()
                    .filter(|&o| signs[o])
                    .map(|o| below(o) + strict)
                    .fold(self.p.lo, i64::max);
                let hi = s
                    .items()
                    .filter(|&o| !signs[o])
                    .map(|o| below(o) - strict)
                    .fold(self.p.hi, i64::min);
                if lo > hi {
                    return None;
                }
                if strict == 1 {
                    // stay near the binding bound so long strict chains fit in the range
                    let w = ((self.p.hi - self.p.lo) / (2 * m as i64)).max(1);
                    if s.items().any(|o| signs[o]) {
                        self.rng.random_range(lo..=hi.min(lo + w))
                    } else {
                        self.rng.random_range(lo.max(hi - w)..=hi)
                    }
                } else {
                    self.rng.random_range(lo..=hi)
                }
            } else if self.p.nonzero_marginals {
                let forbidden: Vec<i64> = s.items().map(below).collect();
                let mut tries = 0;
                loop {
                    let x = self.int();
                    if !forbidden.contains(&x) {
                        break x;
                    }
                    tries += 1;
                    if tries > 64 {
                        return None;
                    }
                }
            } else {
                self.int()
            };
        }
        Some(table)
    }

    fn valuation(&mut self, c: Option<i64>, signs: Option<&[bool]>) -> Option<Valuation> {
        let p = self.p;
        Some(match (p.additive, p.disjointly_normalised) {
            (true, _) => Valuation::additive_from_integers(&self.additive(c, signs)?),
            (false, true) => Valuation::from_integers(&self.normalised_table(c.expect("constant drawn"))),
            (false, false) => Valuation::from_integers(&self.general_table(signs)?),
        })
    }

    fn signs(&mut self) -> Vec<bool> {
        (0..self.p.items).map(|_| self.rng.random_bool(0.5)).collect()
    }

    /// Item classes are built in where the construction allows it: per-agent
    /// signs for generally good/bad items, signs shared by all agents for no
    /// mixed items. Disjointly normalised tables rely on rejection alone.
    fn candidate(&mut self) -> Option<Instance> {
        let p = self.p;
        let c = p.disjointly_normalised.then(|| self.int());
        let items = letter_items(p.items);
        let constructive = !p.disjointly_normalised || p.additive;
        let shared = match p.item_class {
            ItemClass::NoMixed if constructive => Some(self.signs()),
            _ => None,
        };
        let per_agent = constructive && p.item_class == ItemClass::GenerallyGoodBad;
        let next = |draw: &mut Self| {
            let own = per_agent.then(|| draw.signs());
            draw.valuation(c, own.as_deref().or(shared.as_deref()))
        };
        if p.identical {
            let v = next(self)?;
            Instance::identical(items, v, p.agents).ok()
        } else {
            let vals = (0..p.agents).map(|_| next(self)).collect::<Option<Vec<_>>>()?;
            Instance::new(items, vals).ok()
        }
    }
}

/// True iff `inst` meets every constraint in `p`, checked from scratch.
pub fn satisfies_constraints(inst: &Instance, p: &GenParams) -> bool {
    (!p.identical || inst.is_identical())
        && (!p.additive || inst.is_additive())
        && (!p.nonzero_marginals || inst.has_nonzero_marginals())
        && (!p.disjointly_normalised || inst.is_disjointly_normalised())
        && match p.item_class {
            ItemClass::Any => true,
            ItemClass::GenerallyGoodBad => classify(inst).class.generally_good_bad_items,
            ItemClass::NoMixed => classify(inst).class.no_mixed_items,
        }
}

/// Deterministic in `params`; rejection-samples until every constraint holds.
pub fn generate(params: &GenParams) -> Result<Instance> {
    params.validate()?;
    let mut draw = Draw {
        p: params,
        rng: SplitMix64::seed_from_u64(params.seed),
    };
    for _ in 0..params.max_attempts {
        if let Some(inst) = draw.candidate() {
            if satisfies_constraints(&inst, params) {
                return Ok(inst);
            }
        }
    }
    Err(Error::RejectionBudget {
        attempts: params.max_attempts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LandscapeRow {
    pub combination: Conjunction,
    pub count: usize,
    pub total: usize,
    /// First satisfying allocation in enumeration order.
    pub example: Option<Allocation>,
}

fn props(list: &[&str]) -> Vec<Conjunction> {
    list.iter().map(|s| s.parse().expect("built-in combination")).collect()
}

/// Rows reported by default: single axioms, PO and the combinations the
/// impossibility results are about.
pub fn default_combinations() -> Vec<Conjunction> {
    props(&[
        "EF",
        "EF1",
        "EFX",
        "EF1PM",
        "EFXPM",
        "EFX0",
        "EFXPM0",
        "VARIANT_A",
        "VARIANT_B",
        "PO",
        "EFX&EFXPM",
        "EFX&PO",
        "EFXPM&PO",
        "EF1&PO",
        "EF1PM&PO",
        "VARIANT_B&PO",
    ])
}

pub fn landscape(inst: &Instance, budget: u64) -> Result<Vec<LandscapeRow>> {
    landscape_of(inst, &default_combinations(), budget)
}

pub fn landscape_of(inst: &Instance, combos: &[Conjunction], budget: u64) -> Result<Vec<LandscapeRow>> {
    let needed: Vec<Property> = combos.iter().flat_map(|c| c.0.iter().copied()).collect();
    let table = PropertyTable::compute(inst, &needed, budget)?;
    Ok(rows(&table, combos))
}

fn rows(table: &PropertyTable, combos: &[Conjunction]) -> Vec<LandscapeRow> {
    combos
        .iter()
        .map(|c| LandscapeRow {
            combination: c.clone(),
            count: table.count(c),
            total: table.len(),
            example: table.first(c).cloned(),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Cmp {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl Cmp {
    fn symbol(self) -> &'static str {
        match self {
            Cmp::Eq => "=",
            Cmp::Ne => "!=",
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Gt => ">",
            Cmp::Ge => ">=",
        }
    }

    fn holds(self, a: usize, b: usize) -> bool {
        match self {
            Cmp::Eq => a == b,
            Cmp::Ne => a != b,
            Cmp::Lt => a < b,
            Cmp::Le => a <= b,
            Cmp::Gt => a > b,
            Cmp::Ge => a >= b,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Count(usize),
    /// Every allocation, `n^m`.
    All,
}

/// `COMBO OP COUNT`, e.g. `EFX=0`, `EFXPM&PO count = 0`, `EF=all`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub combination: Conjunction,
    pub cmp: Cmp,
    pub target: Target,
}

/// Comma-separated conditions that must all hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Predicate(pub Vec<Condition>);

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("predicate {s:?} (expected e.g. \"EFX=0\" or \"EF1&PO>=1\")"));
        let at = s.find(['=', '<', '>', '!']).ok_or_else(bad)?;
        let (lhs, rest) = s.split_at(at);
        let (cmp, rhs) = [
            ("!=", Cmp::Ne),
            ("<=", Cmp::Le),
            (">=", Cmp::Ge),
            ("==", Cmp::Eq),
            ("=", Cmp::Eq),
            ("<", Cmp::Lt),
            (">", Cmp::Gt),
        ]
        .into_iter()
        .find_map(|(sym, cmp)| rest.strip_prefix(sym).map(|r| (cmp, r)))
        .ok_or_else(bad)?;
        let mut lhs = lhs.trim();
        if let Some(stripped) = lhs.strip_suffix("count").or_else(|| lhs.strip_suffix("COUNT")) {
            lhs = stripped.trim_end();
        }
        if lhs.is_empty() || lhs.contains(char::is_whitespace) {
            return Err(bad());
        }
        let combination = lhs.parse()?;
        let rhs = rhs.trim();
        let target = if rhs.eq_ignore_ascii_case("all") {
            Target::All
        } else {
            Target::Count(rhs.parse().map_err(|_| bad())?)
        };
        Ok(Condition {
            combination,
            cmp,
            target,
        })
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let conds = s.split(',').map(str::parse).collect::<Result<Vec<_>>>()?;
        Ok(Predicate(conds))
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.combination, self.cmp.symbol())?;
        match self.target {
            Target::All => f.write_str("all"),
            Target::Count(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Condition::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl Predicate {
    pub fn combinations(&self) -> Vec<Conjunction> {
        self.0.iter().map(|c| c.combination.clone()).collect()
    }

    pub fn uses_chen_liu(&self) -> bool {
        self.0
            .iter()
            .any(|c| c.combination.0.contains(&Property::Axiom(AxiomId::ChenLiu)))
    }

    /// Evaluated against landscape rows, which must cover every combination.
    pub fn holds(&self, rows: &[LandscapeRow]) -> bool {
        self.0.iter().all(|cond| {
            rows.iter()
                .find(|r| r.combination == cond.combination)
                .is_some_and(|r| {
                    let target = match cond.target {
                        Target::All => r.total,
                        Target::Count(n) => n,
                    };
                    cond.cmp.holds(r.count, target)
                })
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Hit {
    pub seed: u64,
    #[serde(serialize_with = "instance_document")]
    pub instance: Instance,
    pub landscape: Vec<LandscapeRow>,
}

fn instance_document<S: serde::Serializer>(inst: &Instance, s: S) -> std::result::Result<S::Ok, S::Error> {
    InstanceDocument::from_instance(inst).serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct MineResult {
    pub examined: u64,
    /// Seeds for which no instance met the constraints within the attempt budget,
    /// or for which the predicate was not defined (Chen-Liu on arbitrary items).
    pub skipped: Vec<u64>,
    pub hits: Vec<Hit>,
}

/// The landscape rows reported for a hit: the defaults plus the predicate's own.
pub fn mining_combinations(predicate: &Predicate) -> Vec<Conjunction> {
    let mut combos = default_combinations();
    for c in predicate.combinations() {
        if !combos.contains(&c) {
            combos.push(c);
        }
    }
    combos
}

enum Outcome {
    Hit(Hit),
    Miss,
    Skipped(u64),
}

/// Examines instances generated from seeds `seed, seed+1, …, seed+count-1`
/// in parallel; results are in seed order.
pub fn mine(params: &GenParams, predicate: &Predicate, count: u64, budget: u64) -> Result<MineResult> {
    params.validate()?;
    check_budget(params.agents, params.items, budget)?;
    let combos = mining_combinations(predicate);
    let outcomes = (0..count)
        .into_par_iter()
        .map(|k| {
            let p = params.with_offset(k);
            let inst = match generate(&p) {
                Ok(inst) => inst,
                Err(Error::RejectionBudget { .. }) => return Ok(Outcome::Skipped(p.seed)),
                Err(e) => return Err(e),
            };
            let landscape = match landscape_of(&inst, &combos, budget) {
                Ok(rows) => rows,
                Err(Error::NotWellDefined(_)) => return Ok(Outcome::Skipped(p.seed)),
                Err(e) => return Err(e),
            };
            Ok(if predicate.holds(&landscape) {
                Outcome::Hit(Hit {
                    seed: p.seed,
                    instance: inst,
                    landscape,
                })
            } else {
                Outcome::Miss
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut result = MineResult {
        examined: count,
        skipped: Vec::new(),
        hits: Vec::new(),
    };
    for o in outcomes {
        match o {
            Outcome::Hit(h) => result.hits.push(h),
            Outcome::Skipped(seed) => result.skipped.push(seed),
            Outcome::Miss => {}
        }
    }
    Ok(result)
}
