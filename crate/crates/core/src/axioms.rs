//! Envy-based fairness axioms with violation witnesses.
//!
//! Every checker walks all ordered pairs `(i, j)` with `i` envying `j`
//! (`v_i(A_i) < v_i(A_j)`) and combines two clauses:
//!
//! * a *good* clause over items `o ∈ A_j`, repaired by removing `o` from `A_j`;
//! * a *bad* clause over items `o ∈ A_i`, repaired either by removing `o` from
//!   `A_i` or by adding it to `A_j`.
//!
//! What differs between axioms is which items qualify for a clause and whether
//! every qualifying item must repair the envy (the "any item" family: EFX,
//! EFX±, their zero-marginal and hybrid variants, Chen–Liu) or some qualifying
//! item must (EF1, EF1±). In the "any item" family a pair with no qualifying
//! item at all is satisfied; such pairs are recorded as `vacuous-envy` notes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::allocation::Allocation;
use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::instance::{Instance, Level};
use crate::taxonomy::{classify, ItemClassMatrix};
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomId {
    #[serde(rename = "EF")]
    Ef,
    #[serde(rename = "EF1")]
    Ef1,
    #[serde(rename = "EFX")]
    Efx,
    #[serde(rename = "EF1PM")]
    Ef1Pm,
    #[serde(rename = "EFXPM")]
    EfxPm,
    #[serde(rename = "EFX0")]
    Efx0,
    #[serde(rename = "EFXPM0")]
    EfxPm0,
    #[serde(rename = "VARIANT_A")]
    VariantA,
    #[serde(rename = "VARIANT_B")]
    VariantB,
    #[serde(rename = "CHEN_LIU")]
    ChenLiu,
}

impl AxiomId {
    pub const ALL: [AxiomId; 10] = [
        AxiomId::Ef,
        AxiomId::Ef1,
        AxiomId::Efx,
        AxiomId::Ef1Pm,
        AxiomId::EfxPm,
        AxiomId::Efx0,
        AxiomId::EfxPm0,
        AxiomId::VariantA,
        AxiomId::VariantB,
        AxiomId::ChenLiu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::Ef => "EF",
            AxiomId::Ef1 => "EF1",
            AxiomId::Efx => "EFX",
            AxiomId::Ef1Pm => "EF1PM",
            AxiomId::EfxPm => "EFXPM",
            AxiomId::Efx0 => "EFX0",
            AxiomId::EfxPm0 => "EFXPM0",
            AxiomId::VariantA => "VARIANT_A",
            AxiomId::VariantB => "VARIANT_B",
            AxiomId::ChenLiu => "CHEN_LIU",
        }
    }

    /// Lower-case flag spelling used on the command line.
    pub fn flag(self) -> &'static str {
        match self {
            AxiomId::Ef => "ef",
            AxiomId::Ef1 => "ef1",
            AxiomId::Efx => "efx",
            AxiomId::Ef1Pm => "ef1pm",
            AxiomId::EfxPm => "efxpm",
            AxiomId::Efx0 => "efx0",
            AxiomId::EfxPm0 => "efxpm0",
            AxiomId::VariantA => "variant-a",
            AxiomId::VariantB => "variant-b",
            AxiomId::ChenLiu => "chen-liu",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        AxiomId::ALL
            .into_iter()
            .find(|a| a.flag() == norm || a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

/// Which inequality a witness exhibits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `lhs = v_i(A_i)`, `rhs = v_i(A_j ∖ {o})`
    RemovedGood,
    /// `lhs = v_i(A_i ∖ {o})`, `rhs = v_i(A_j)`
    RemovedBad,
    /// `lhs = v_i(A_i)`, `rhs = v_i(A_j ∪ {o})`
    AddedBad,
    /// Envy with no qualifying item; `lhs = v_i(A_i)`, `rhs = v_i(A_j)`.
    VacuousEnvy,
    /// Envy that no permitted single-item change removes; `lhs = v_i(A_i)`, `rhs = v_i(A_j)`.
    Envy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub envier: usize,
    pub envied: usize,
    pub condition: Condition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub item: Option<usize>,
    pub lhs: Value,
    pub rhs: Value,
}

impl Witness {
    /// Recomputes `(lhs, rhs)` from the instance according to the condition tag.
    pub fn recompute(&self, inst: &Instance, alloc: &Allocation) -> Option<(Value, Value)> {
        let (i, j) = (self.envier, self.envied);
        let (own, other) = (alloc.bundle(i), alloc.bundle(j));
        let v = |b: Bundle| inst.value(i, b).clone();
        Some(match self.condition {
            Condition::RemovedGood => (v(own), v(other.without(self.item?))),
            Condition::RemovedBad => (v(own.without(self.item?)), v(other)),
            Condition::AddedBad => (v(own), v(other.with(self.item?))),
            Condition::VacuousEnvy | Condition::Envy => (v(own), v(other)),
        })
    }
}

/// Result of one axiom on one allocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub satisfied: bool,
    pub violations: Vec<Witness>,
    /// Envying pairs that passed only because no item qualified.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<Witness>,
    /// For Pareto-optimality: an allocation that Pareto-improves the checked one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub improvement: Option<Allocation>,
}

impl Verdict {
    pub fn from_violations(violations: Vec<Witness>, notes: Vec<Witness>) -> Self {
        Verdict {
            satisfied: violations.is_empty(),
            violations,
            notes,
            improvement: None,
        }
    }

    pub fn from_improvement(improvement: Option<Allocation>) -> Self {
        Verdict {
            satisfied: improvement.is_none(),
            violations: Vec::new(),
            notes: Vec::new(),
            improvement,
        }
    }
}

/// Strictness of a qualifying marginal test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Test {
    Strict,
    Weak,
    Always,
}

impl Test {
    /// Does `gain` (an ordering of after vs. before) qualify as a good?
    fn good(self, after: Level, before: Level) -> bool {
        match self {
            Test::Strict => after > before,
            Test::Weak => after >= before,
            Test::Always => true,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum GoodClause {
    /// Qualifies when `v_i(A_j) ⋛ v_i(A_j ∖ {o})`.
    WrtEnvied(Test),
    /// Qualifies when `v_i(A_i ∪ {o}) ⋛ v_i(A_i)`.
    WrtOwn(Test),
    /// Qualifies when `o` is generally good for `i`.
    General,
}

#[derive(Clone, Copy, Debug)]
enum BadClause {
    /// Qualifies when `v_i(A_i) ⋚ v_i(A_i ∖ {o})`; repaired by removal from `A_i`.
    Removed(Test),
    /// Same qualifier; repaired by adding `o` to `A_j`.
    Added(Test),
    /// Qualifies when `o` is generally bad for `i`; repaired by adding `o` to `A_j`.
    AddedGeneral,
}

#[derive(Clone, Copy, Debug)]
enum Quantifier {
    Every,
    Some,
}

#[derive(Clone, Copy, Debug)]
enum Rule {
    EnvyFree,
    Clauses {
        quantifier: Quantifier,
        good: GoodClause,
        bad: BadClause,
    },
}

fn rule(id: AxiomId) -> Rule {
    use BadClause::*;
    use GoodClause::*;
    let every = |good, bad| Rule::Clauses {
        quantifier: Quantifier::Every,
        good,
        bad,
    };
    let some = |good, bad| Rule::Clauses {
        quantifier: Quantifier::Some,
        good,
        bad,
    };
    match id {
        AxiomId::Ef => Rule::EnvyFree,
        AxiomId::Ef1 => some(WrtEnvied(Test::Always), Removed(Test::Always)),
        AxiomId::Ef1Pm => some(WrtOwn(Test::Strict), Added(Test::Strict)),
        AxiomId::Efx => every(WrtEnvied(Test::Strict), Removed(Test::Strict)),
        AxiomId::EfxPm => every(WrtOwn(Test::Strict), Added(Test::Strict)),
        AxiomId::Efx0 => every(WrtEnvied(Test::Weak), Removed(Test::Weak)),
        AxiomId::EfxPm0 => every(WrtOwn(Test::Weak), Added(Test::Weak)),
        AxiomId::VariantA => every(WrtOwn(Test::Strict), Removed(Test::Strict)),
        AxiomId::VariantB => every(WrtEnvied(Test::Strict), Added(Test::Strict)),
        AxiomId::ChenLiu => every(General, AddedGeneral),
    }
}

/// One envying pair and the attempted single-item repairs.
struct Pair<'a> {
    inst: &'a Instance,
    i: usize,
    j: usize,
    own: Bundle,
    other: Bundle,
    classes: Option<&'a ItemClassMatrix>,
}

struct Attempt {
    item: usize,
    condition: Condition,
    repaired: bool,
    lhs: Level,
    rhs: Level,
}

impl Pair<'_> {
    fn lv(&self, b: Bundle) -> Level {
        self.inst.level(self.i, b)
    }

    fn good_attempts(&self, clause: GoodClause) -> impl Iterator<Item = Attempt> + '_ {
        self.other.items().filter_map(move |o| {
            let qualifies = match clause {
                GoodClause::WrtEnvied(t) => t.good(self.lv(self.other), self.lv(self.other.without(o))),
                GoodClause::WrtOwn(t) => t.good(self.lv(self.own.with(o)), self.lv(self.own)),
                GoodClause::General => self.classes?.generally_good[self.i][o],
            };
            qualifies.then(|| {
                let (lhs, rhs) = (self.lv(self.own), self.lv(self.other.without(o)));
                Attempt {
                    item: o,
                    condition: Condition::RemovedGood,
                    repaired: lhs >= rhs,
                    lhs,
                    rhs,
                }
            })
        })
    }

    fn bad_attempts(&self, clause: BadClause) -> impl Iterator<Item = Attempt> + '_ {
        self.own.items().filter_map(move |o| {
            let without = self.lv(self.own.without(o));
            let here = self.lv(self.own);
            // a bad: holding it is no better than not holding it
            let qualifies = match clause {
                BadClause::Removed(t) | BadClause::Added(t) => t.good(without, here),
                BadClause::AddedGeneral => self.classes?.generally_bad[self.i][o],
            };
            qualifies.then(|| {
                let (condition, lhs, rhs) = match clause {
                    BadClause::Removed(_) => (Condition::RemovedBad, without, self.lv(self.other)),
                    _ => (Condition::AddedBad, here, self.lv(self.other.with(o))),
                };
                Attempt {
                    item: o,
                    condition,
                    repaired: lhs >= rhs,
                    lhs,
                    rhs,
                }
            })
        })
    }

    fn witness(&self, condition: Condition, item: Option<usize>, lhs: Level, rhs: Level) -> Witness {
        Witness {
            envier: self.i,
            envied: self.j,
            condition,
            item,
            lhs: self.inst.level_value(lhs).clone(),
            rhs: self.inst.level_value(rhs).clone(),
        }
    }

    fn envy_witness(&self, condition: Condition) -> Witness {
        self.witness(condition, None, self.lv(self.own), self.lv(self.other))
    }
}

/// `v_i(A_i) < v_i(A_j)`.
pub fn envies(inst: &Instance, alloc: &Allocation, i: usize, j: usize) -> Result<bool> {
    if i == j {
        return Err(Error::SameAgent(i));
    }
    let n = inst.agents();
    for agent in [i, j] {
        if agent >= n {
            return Err(Error::AgentOutOfRange { agent, agents: n });
        }
    }
    Ok(inst.level(i, alloc.bundle(i)) < inst.level(i, alloc.bundle(j)))
}

fn evaluate(inst: &Instance, alloc: &Allocation, rule: Rule, classes: Option<&ItemClassMatrix>) -> Verdict {
    let n = inst.agents();
    let mut violations = Vec::new();
    let mut notes = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let pair = Pair {
                inst,
                i,
                j,
                own: alloc.bundle(i),
                other: alloc.bundle(j),
                classes,
            };
            if pair.lv(pair.own) >= pair.lv(pair.other) {
                continue;
            }
            let Rule::Clauses { quantifier, good, bad } = rule else {
                violations.push(pair.envy_witness(Condition::Envy));
                continue;
            };
            let attempts: Vec<Attempt> = pair.good_attempts(good).chain(pair.bad_attempts(bad)).collect();
            match quantifier {
                Quantifier::Every => {
                    if attempts.is_empty() {
                        notes.push(pair.envy_witness(Condition::VacuousEnvy));
                    }
                    violations.extend(
                        attempts
                            .iter()
                            .filter(|a| !a.repaired)
                            .map(|a| pair.witness(a.condition, Some(a.item), a.lhs, a.rhs)),
                    );
                }
                Quantifier::Some => {
                    if !attempts.iter().any(|a| a.repaired) {
                        violations.push(pair.envy_witness(Condition::Envy));
                    }
                }
            }
        }
    }
    Verdict::from_violations(violations, notes)
}

/// Evaluates any axiom. Only `CHEN_LIU` can fail, when the instance has an
/// item that is neither generally good nor generally bad for some agent.
pub fn check(inst: &Instance, alloc: &Allocation, id: AxiomId) -> Result<Verdict> {
    if id == AxiomId::ChenLiu {
        return check_chen_liu(inst, alloc);
    }
    Ok(evaluate(inst, alloc, rule(id), None))
}

pub fn check_ef(inst: &Instance, alloc: &Allocation) -> Verdict {
    evaluate(inst, alloc, rule(AxiomId::Ef), None)
}

/// Envy removable by deleting some item from the envied bundle or from the envier's own.
pub fn check_ef1(inst: &Instance, alloc: &Allocation) -> Verdict {
    evaluate(inst, alloc, rule(AxiomId::Ef1), None)
}

pub fn check_efx(inst: &Instance, alloc: &Allocation) -> Verdict {
    evaluate(inst, alloc, rule(AxiomId::Efx), None)
}

pub fn check_efxpm(inst: &Instance, alloc: &Allocation) -> Verdict {
    evaluate(inst, alloc, rule(AxiomId::EfxPm), None)
}

/// Envy removable by deleting some good (judged against the envier's own bundle)
/// from the envied bundle, or by handing some strictly-bad item of the envier
/// over to the envied agent.
pub fn check_ef1pm(inst: &Instance, alloc: &Allocation) -> Verdict {
    evaluate(inst, alloc, rule(AxiomId::Ef1Pm), None)
}

/// The zero-marginal and hybrid variants. `id` must be one of `EFX0`,
/// `EFXPM0`, `VARIANT_A`, `VARIANT_B`.
pub fn check_variant(inst: &Instance, alloc: &Allocation, id: AxiomId) -> Result<Verdict> {
    match id {
        AxiomId::Efx0 | AxiomId::EfxPm0 | AxiomId::VariantA | AxiomId::VariantB => {
            Ok(evaluate(inst, alloc, rule(id), None))
        }
        other => Err(Error::Unsupported(format!("{other} is not a variant axiom"))),
    }
}

/// Precomputed item classes so repeated Chen–Liu checks skip the subset scans.
pub fn chen_liu_context(inst: &Instance) -> Result<ItemClassMatrix> {
    let c = classify(inst);
    if !c.class.generally_good_bad_items {
        return Err(Error::NotWellDefined(
            "the Chen-Liu variant needs every item to be generally good or generally bad for every agent".to_string(),
        ));
    }
    Ok(c.matrix)
}

pub fn check_chen_liu(inst: &Instance, alloc: &Allocation) -> Result<Verdict> {
    let classes = chen_liu_context(inst)?;
    Ok(check_chen_liu_with(inst, alloc, &classes))
}

pub fn check_chen_liu_with(inst: &Instance, alloc: &Allocation, classes: &ItemClassMatrix) -> Verdict {
    evaluate(inst, alloc, rule(AxiomId::ChenLiu), Some(classes))
}
