//! Built-in instances and the claims made about them, checked by enumeration.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::allocation::{Allocation, DEFAULT_BUDGET};
use crate::axioms::AxiomId;
use crate::bundle::Bundle;
use crate::efficiency::{leximin_set, pareto_improves, utility_vector};
use crate::error::{Error, Result};
use crate::format::parse_bundle_key;
use crate::instance::{letter_items, Instance};
use crate::properties::{Conjunction, Property, PropertyTable};
use crate::protocols::cut_and_choose;
use crate::taxonomy::{classify, is_generally_bad, is_generally_good, is_mixed, MarginalAt, MixedWitness};
use crate::valuation::Valuation;
use crate::value::Value;

pub const FIXTURE_IDS: [&str; 9] = [
    "FIX-EX1", "FIX-EX2", "FIX-OBS1", "FIX-OBS3", "FIX-T1", "FIX-T2", "FIX-T4", "FIX-D1", "FIX-ZM",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimKind {
    ExistsAllocation,
    NoAllocation,
    AllocationHas,
    AllocationLacks,
    SetEquality,
    InstancePredicate,
    Exploratory,
}

/// Facts about the instance itself rather than its allocations.
#[derive(Clone, Debug)]
pub enum InstanceFact {
    Identical,
    NonzeroMarginals,
    Additive,
    DisjointlyNormalised,
    GenerallyGoodBadItems,
    NoMixedItems,
    Mixed(usize),
    GenerallyGood {
        agent: usize,
        item: usize,
    },
    GenerallyBad {
        agent: usize,
        item: usize,
    },
    Marginal {
        agent: usize,
        bundle: Bundle,
        item: usize,
        value: Value,
    },
    MixedWitness(MixedWitness),
}

#[derive(Clone, Debug)]
pub enum Check {
    /// Number of allocations satisfying the conjunction is zero.
    None(Conjunction),
    /// At least one allocation satisfies the conjunction.
    Some(Conjunction),
    /// The satisfying set is exactly these allocations.
    SetIs(Conjunction, Vec<Allocation>),
    /// Both conjunctions select the same allocations.
    SameSet(Conjunction, Conjunction),
    Has(Allocation, Property),
    LeximinSet(Vec<Allocation>),
    /// Sorted utility vector of an allocation.
    Utilities(Allocation, Vec<Value>),
    ParetoImproves(Allocation, Allocation),
    /// Cut-and-choose hands the chooser this bundle and the outcome is EFX±.
    CutAndChoose(Bundle),
    Instance(InstanceFact),
}

#[derive(Clone, Debug)]
pub struct Claim {
    pub description: String,
    pub kind: ClaimKind,
    pub expected: bool,
    pub gating: bool,
    pub check: Check,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: &'static str,
    pub title: &'static str,
    pub instance: Instance,
    pub claims: Vec<Claim>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    /// A non-gating claim whose computed value differs from the stated one.
    Discrepancy,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimOutcome {
    pub fixture: String,
    pub claim: String,
    pub kind: ClaimKind,
    pub gating: bool,
    pub expected: bool,
    pub observed: bool,
    pub status: ClaimStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub outcomes: Vec<ClaimOutcome>,
    pub gating_failures: usize,
    pub discrepancies: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.gating_failures == 0
    }
}

fn explicit(items: &[String], entries: &[(&str, &str)]) -> Valuation {
    let mut table = vec![None; 1 << items.len()];
    for (key, value) in entries {
        let b = parse_bundle_key(items, key).expect("fixture key");
        table[b.mask() as usize] = Some(value.parse::<Value>().expect("fixture value"));
    }
    Valuation::explicit(table.into_iter().map(|v| v.expect("fixture table is total")).collect())
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn alloc(inst: &Instance, bundles: &[&[&str]]) -> Allocation {
    Allocation::from_names(inst, bundles).expect("fixture allocation")
}

fn bundle(inst: &Instance, members: &[&str]) -> Bundle {
    inst.bundle_of(members).expect("fixture bundle")
}

fn vals(v: &[&str]) -> Vec<Value> {
    v.iter().map(|s| s.parse().expect("fixture value")).collect()
}

fn ax(a: AxiomId) -> Property {
    Property::Axiom(a)
}

fn conj(props: &[Property]) -> Conjunction {
    Conjunction::of(props)
}

fn claim(description: &str, kind: ClaimKind, check: Check) -> Claim {
    Claim {
        description: description.to_string(),
        kind,
        expected: true,
        gating: true,
        check,
    }
}

fn has(description: &str, a: &Allocation, p: Property) -> Claim {
    claim(description, ClaimKind::AllocationHas, Check::Has(a.clone(), p))
}

fn lacks(description: &str, a: &Allocation, p: Property) -> Claim {
    Claim {
        expected: false,
        ..claim(description, ClaimKind::AllocationLacks, Check::Has(a.clone(), p))
    }
}

fn fact(description: &str, f: InstanceFact) -> Claim {
    claim(description, ClaimKind::InstancePredicate, Check::Instance(f))
}

fn not_fact(description: &str, f: InstanceFact) -> Claim {
    Claim {
        expected: false,
        ..fact(description, f)
    }
}

fn none(description: &str, c: Conjunction) -> Claim {
    claim(description, ClaimKind::NoAllocation, Check::None(c))
}

fn exploratory(description: &str, check: Check) -> Claim {
    Claim {
        gating: false,
        ..claim(description, ClaimKind::Exploratory, check)
    }
}

fn cricket() -> Fixture {
    let items = names(&["b", "r"]);
    let v = explicit(&items, &[("", "0"), ("b", "-1"), ("r", "-1"), ("b,r", "2")]);
    let inst = Instance::identical(items, v, 2).expect("fixture");
    let (b, r) = (0, 1);
    let claims = vec![
        fact(
            "b is good for an agent holding r",
            InstanceFact::Marginal {
                agent: 0,
                bundle: Bundle::singleton(r),
                item: b,
                value: Value::from_integer(3),
            },
        ),
        fact(
            "b alone is bad",
            InstanceFact::Marginal {
                agent: 0,
                bundle: Bundle::EMPTY,
                item: b,
                value: Value::from_integer(-1),
            },
        ),
        not_fact(
            "b is not generally good for Alice",
            InstanceFact::GenerallyGood { agent: 0, item: b },
        ),
        not_fact(
            "b is not generally bad for Alice",
            InstanceFact::GenerallyBad { agent: 0, item: b },
        ),
        not_fact(
            "r is not generally good for Bob",
            InstanceFact::GenerallyGood { agent: 1, item: r },
        ),
        not_fact(
            "r is not generally bad for Bob",
            InstanceFact::GenerallyBad { agent: 1, item: r },
        ),
        fact("every item is mixed (b)", InstanceFact::Mixed(b)),
        fact("every item is mixed (r)", InstanceFact::Mixed(r)),
        not_fact(
            "the problem is not one with generally good/bad items",
            InstanceFact::GenerallyGoodBadItems,
        ),
        claim(
            "cut-and-choose gives the chooser {b,r} and is EFX±",
            ClaimKind::AllocationHas,
            Check::CutAndChoose(bundle(&inst, &["b", "r"])),
        ),
        has(
            "({b,r}, ∅) is EFX±",
            &alloc(&inst, &[&["b", "r"], &[]]),
            ax(AxiomId::EfxPm),
        ),
        has(
            "(∅, {b,r}) is EFX±",
            &alloc(&inst, &[&[], &["b", "r"]]),
            ax(AxiomId::EfxPm),
        ),
        has(
            "({b}, {r}) is envy-free",
            &alloc(&inst, &[&["b"], &["r"]]),
            ax(AxiomId::Ef),
        ),
        has(
            "({r}, {b}) is envy-free",
            &alloc(&inst, &[&["r"], &["b"]]),
            ax(AxiomId::Ef),
        ),
    ];
    Fixture {
        id: "FIX-EX1",
        title: "cricket: one ball and one racket, worthless apart",
        instance: inst,
        claims,
    }
}

fn courses() -> Fixture {
    let items = names(&["s", "l1", "l2", "l3"]);
    // one course 6, three 12, four 18; two courses 6 with the seminar, else 9
    let by_rule: Vec<Value> = Bundle::all(4)
        .map(|b| {
            Value::from_integer(match b.len() {
                0 => 0,
                1 => 6,
                2 if b.contains(0) => 6,
                2 => 9,
                3 => 12,
                _ => 18,
            })
        })
        .collect();
    let inst = Instance::identical(items, Valuation::explicit(by_rule), 2).expect("fixture");
    let one_three = alloc(&inst, &[&["s"], &["l1", "l2", "l3"]]);
    let two_two = alloc(&inst, &[&["s", "l1"], &["l2", "l3"]]);
    let claims = vec![
        claim(
            "({s}, {l1,l2,l3}) gives 6 and 12 credits",
            ClaimKind::InstancePredicate,
            Check::Utilities(one_three.clone(), vals(&["6", "12"])),
        ),
        has("({s}, {l1,l2,l3}) is EFX±", &one_three, ax(AxiomId::EfxPm)),
        has("({s}, {l1,l2,l3}) is PO", &one_three, Property::Po),
        lacks("({s}, {l1,l2,l3}) is not EFX", &one_three, ax(AxiomId::Efx)),
        claim(
            "({s,l1}, {l2,l3}) gives 6 and 9 credits",
            ClaimKind::InstancePredicate,
            Check::Utilities(two_two.clone(), vals(&["6", "9"])),
        ),
        has("({s,l1}, {l2,l3}) is EFX", &two_two, ax(AxiomId::Efx)),
        has("({s,l1}, {l2,l3}) is EFX±", &two_two, ax(AxiomId::EfxPm)),
        lacks("({s,l1}, {l2,l3}) is not PO", &two_two, Property::Po),
        not_fact(
            "pairing the seminar with a lecture adds nothing, so marginals can be zero",
            InstanceFact::NonzeroMarginals,
        ),
    ];
    Fixture {
        id: "FIX-EX2",
        title: "course credits: a seminar and three lectures",
        instance: inst,
        claims,
    }
}

fn additive_mixed() -> Fixture {
    let items = names(&["a", "b"]);
    let inst = Instance::new(
        items,
        vec![
            Valuation::additive_from_integers(&[3, -1]),
            Valuation::additive_from_integers(&[1, 1]),
        ],
    )
    .expect("fixture");
    let b = 1;
    let claims = vec![
        fact("valuations are additive", InstanceFact::Additive),
        not_fact("valuations are not identical", InstanceFact::Identical),
        fact("b is mixed", InstanceFact::Mixed(b)),
        fact(
            "b is generally bad for agent 1",
            InstanceFact::GenerallyBad { agent: 0, item: b },
        ),
        fact(
            "b is generally good for agent 2",
            InstanceFact::GenerallyGood { agent: 1, item: b },
        ),
        fact(
            "every item is generally good or generally bad",
            InstanceFact::GenerallyGoodBadItems,
        ),
        not_fact("some item is mixed", InstanceFact::NoMixedItems),
    ];
    Fixture {
        id: "FIX-OBS1",
        title: "additive valuations with a mixed item that is generally good or bad per agent",
        instance: inst,
        claims,
    }
}

fn no_mixed() -> Fixture {
    let items = letter_items(4);
    let v = explicit(
        &items,
        &[
            ("", "0"),
            ("a", "1"),
            ("b", "1"),
            ("c", "3"),
            ("d", "1"),
            ("a,b", "2"),
            ("a,c", "2"),
            ("a,d", "2"),
            ("b,c", "2"),
            ("b,d", "2"),
            ("c,d", "2"),
            ("a,b,c", "4"),
            ("b,c,d", "4"),
            ("a,b,d", "1.5"),
            ("a,c,d", "4"),
            ("a,b,c,d", "5"),
        ],
    );
    let inst = Instance::identical(items, v, 2).expect("fixture");
    let a = 0;
    let marginal = |desc: &str, agent: usize, members: &[&str], value: &str| {
        fact(
            desc,
            InstanceFact::Marginal {
                agent,
                bundle: bundle(&inst, members),
                item: a,
                value: value.parse().expect("fixture value"),
            },
        )
    };
    let mut claims = vec![
        fact("no item is mixed", InstanceFact::NoMixedItems),
        not_fact(
            "the problem is not one with generally good/bad items",
            InstanceFact::GenerallyGoodBadItems,
        ),
        marginal("a is good in ({a,b}, {c,d}) for agent 1", 0, &["b"], "1"),
        marginal("a is good in ({a,b}, {c,d}) for agent 2", 1, &["c", "d"], "2"),
        marginal("a is bad in ({a,c}, {b,d}) for agent 1", 0, &["c"], "-1"),
        marginal("a is bad in ({a,c}, {b,d}) for agent 2", 1, &["b", "d"], "-1/2"),
    ];
    for agent in 0..2 {
        claims.push(not_fact(
            &format!("a is not generally good for agent {}", agent + 1),
            InstanceFact::GenerallyGood { agent, item: a },
        ));
        claims.push(not_fact(
            &format!("a is not generally bad for agent {}", agent + 1),
            InstanceFact::GenerallyBad { agent, item: a },
        ));
    }
    Fixture {
        id: "FIX-OBS3",
        title: "identical valuations, no mixed items, an item neither generally good nor bad",
        instance: inst,
        claims,
    }
}

/// Identical table where no allocation is EFX.
pub fn no_efx_table() -> Valuation {
    explicit(
        &letter_items(4),
        &[
            ("", "0"),
            ("a", "5"),
            ("b", "5"),
            ("c", "5"),
            ("d", "5"),
            ("a,b", "6"),
            ("a,c", "3"),
            ("b,c", "3"),
            ("a,d", "6"),
            ("b,d", "6"),
            ("c,d", "3"),
            ("a,b,c", "7"),
            ("a,b,d", "8"),
            ("a,c,d", "7"),
            ("b,c,d", "7"),
            ("a,b,c,d", "9"),
        ],
    )
}

fn no_efx() -> Fixture {
    let inst = Instance::identical(letter_items(4), no_efx_table(), 2).expect("fixture");
    let lex = alloc(&inst, &[&["c"], &["a", "b", "d"]]);
    let lex_swap = alloc(&inst, &[&["a", "b", "d"], &["c"]]);
    let witness = MixedWitness {
        item: 0,
        positive: MarginalAt {
            agent: 1,
            bundle: bundle(&inst, &["b", "d"]),
            marginal: Value::from_integer(2),
        },
        negative: MarginalAt {
            agent: 0,
            bundle: bundle(&inst, &["c"]),
            marginal: Value::from_integer(-2),
        },
    };
    let claims = vec![
        fact("valuations are identical", InstanceFact::Identical),
        fact("marginals are non-zero", InstanceFact::NonzeroMarginals),
        fact("a is mixed", InstanceFact::Mixed(0)),
        fact(
            "a is bad wrt {c} (3-5=-2) and good wrt {b,d} (8-6=2)",
            InstanceFact::MixedWitness(witness),
        ),
        none("no allocation is EFX", conj(&[ax(AxiomId::Efx)])),
        claim(
            "the leximin solutions are ({c},{a,b,d}) and its swap",
            ClaimKind::SetEquality,
            Check::LeximinSet(vec![lex.clone(), lex_swap.clone()]),
        ),
        claim(
            "({c},{a,b,d}) gives 5 and 8",
            ClaimKind::InstancePredicate,
            Check::Utilities(lex.clone(), vals(&["5", "8"])),
        ),
        has("the leximin solution ({c},{a,b,d}) is EFX±", &lex, ax(AxiomId::EfxPm)),
        has("the leximin solution ({c},{a,b,d}) is PO", &lex, Property::Po),
        has(
            "the leximin solution ({a,b,d},{c}) is EFX±",
            &lex_swap,
            ax(AxiomId::EfxPm),
        ),
        none(
            "no allocation is both EFX and PO",
            conj(&[ax(AxiomId::Efx), Property::Po]),
        ),
        exploratory(
            "the no-EFX impossibility carries over to the variant with clause 1)′ of EFX± and clause 2) of EFX",
            Check::None(conj(&[ax(AxiomId::VariantA)])),
        ),
    ];
    Fixture {
        id: "FIX-T1",
        title: "identical valuations with non-zero marginals where no allocation is EFX",
        instance: inst,
        claims,
    }
}

fn generally_bad() -> Fixture {
    let items = letter_items(4);
    let v = explicit(
        &items,
        &[
            ("", "0"),
            ("a", "-4"),
            ("b", "-4"),
            ("c", "-4"),
            ("d", "-6"),
            ("a,b", "-5"),
            ("a,c", "-5"),
            ("b,c", "-5"),
            ("a,d", "-7"),
            ("b,d", "-7"),
            ("c,d", "-7"),
            ("a,b,c", "-8"),
            ("a,b,d", "-8"),
            ("a,c,d", "-8"),
            ("b,c,d", "-8"),
            ("a,b,c,d", "-9"),
        ],
    );
    let inst = Instance::identical(items, v, 2).expect("fixture");
    let a = alloc(&inst, &[&["d"], &["a", "b", "c"]]);
    let b = alloc(&inst, &[&["a", "b", "c"], &["d"]]);
    let c = alloc(&inst, &[&["a", "b"], &["c", "d"]]);
    let d = alloc(&inst, &[&["c", "d"], &["a", "b"]]);
    let mut claims = vec![
        fact("valuations are identical", InstanceFact::Identical),
        fact("marginals are non-zero", InstanceFact::NonzeroMarginals),
        fact(
            "every item is generally good or generally bad",
            InstanceFact::GenerallyGoodBadItems,
        ),
    ];
    for item in 0..4 {
        claims.push(fact(
            &format!("{} is generally bad", inst.item_name(item)),
            InstanceFact::GenerallyBad { agent: 0, item },
        ));
    }
    claims.extend([
        claim(
            "the only EFX allocations are ({d},{a,b,c}) and ({a,b,c},{d})",
            ClaimKind::SetEquality,
            Check::SetIs(conj(&[ax(AxiomId::Efx)]), vec![a.clone(), b.clone()]),
        ),
        lacks("({a,b,c},{d}) violates EFX± (-8 < -7)", &b, ax(AxiomId::EfxPm)),
        none(
            "no EFX allocation is EFX±",
            conj(&[ax(AxiomId::Efx), ax(AxiomId::EfxPm)]),
        ),
        none("no EFX allocation is PO", conj(&[ax(AxiomId::Efx), Property::Po])),
        claim(
            "({a,b},{c,d}) Pareto-improves ({d},{a,b,c})",
            ClaimKind::InstancePredicate,
            Check::ParetoImproves(c.clone(), a.clone()),
        ),
        claim(
            "({c,d},{a,b}) Pareto-improves ({a,b,c},{d})",
            ClaimKind::InstancePredicate,
            Check::ParetoImproves(d.clone(), b.clone()),
        ),
        claim(
            "({a,b},{c,d}) gives -5 and -7",
            ClaimKind::InstancePredicate,
            Check::Utilities(c.clone(), vals(&["-7", "-5"])),
        ),
        claim(
            "the leximin solutions are exactly those with utilities (-7,-5)",
            ClaimKind::SetEquality,
            Check::LeximinSet(vec![
                alloc(&inst, &[&["a", "b"], &["c", "d"]]),
                alloc(&inst, &[&["b", "c"], &["a", "d"]]),
                alloc(&inst, &[&["a", "c"], &["b", "d"]]),
                alloc(&inst, &[&["b", "d"], &["a", "c"]]),
                alloc(&inst, &[&["a", "d"], &["b", "c"]]),
                alloc(&inst, &[&["c", "d"], &["a", "b"]]),
            ]),
        ),
        lacks(
            "({a,b,c},{d}) violates the variant with EFX clause 1) and EFX± clause 2)′",
            &b,
            ax(AxiomId::VariantB),
        ),
        exploratory(
            "the EFX/PO incompatibility carries over to the variant with clause 1) of EFX and clause 2)′ of EFX±",
            Check::None(conj(&[ax(AxiomId::VariantB), Property::Po])),
        ),
    ]);
    Fixture {
        id: "FIX-T2",
        title: "identical generally bad items where EFX is incompatible with EFX± and with PO",
        instance: inst,
        claims,
    }
}

fn cardinality() -> Fixture {
    let v1 = Valuation::by_cardinality(4, &vals(&["0", "-1", "-2", "3", "4"]));
    let v2 = Valuation::by_cardinality(4, &vals(&["0", "1", "2", "3", "4"]));
    let inst = Instance::new(letter_items(4), vec![v1, v2]).expect("fixture");
    let one_or_two: Vec<Allocation> = crate::allocation::Allocations::new(2, 4)
        .filter(|a| matches!(a.bundle(0).len(), 1 | 2))
        .collect();
    let nothing = alloc(&inst, &[&[], &["a", "b", "c", "d"]]);
    let single = alloc(&inst, &[&["a"], &["b", "c", "d"]]);
    let claims = vec![
        not_fact("valuations are not identical", InstanceFact::Identical),
        fact("marginals are non-zero", InstanceFact::NonzeroMarginals),
        not_fact(
            "valuations are not disjointly normalised",
            InstanceFact::DisjointlyNormalised,
        ),
        claim(
            "the EF1 allocations are those giving agent 1 one or two items",
            ClaimKind::SetEquality,
            Check::SetIs(conj(&[ax(AxiomId::Ef1)]), one_or_two),
        ),
        has("({a},{b,c,d}) is EF1", &single, ax(AxiomId::Ef1)),
        lacks("(∅,{a,b,c,d}) is not EF1", &nothing, ax(AxiomId::Ef1)),
        lacks("(∅,{a,b,c,d}) is not EF1±", &nothing, ax(AxiomId::Ef1Pm)),
        none("no EF1 allocation is PO", conj(&[ax(AxiomId::Ef1), Property::Po])),
        has("(∅,{a,b,c,d}) is PO", &nothing, Property::Po),
        claim(
            "(∅,{a,b,c,d}) gives 0 and 4",
            ClaimKind::InstancePredicate,
            Check::Utilities(nothing.clone(), vals(&["0", "4"])),
        ),
        claim(
            "(∅,{a,b,c,d}) Pareto-improves ({a},{b,c,d})",
            ClaimKind::InstancePredicate,
            Check::ParetoImproves(nothing.clone(), single.clone()),
        ),
        claim(
            "the EF1± allocations are exactly the EF1 allocations",
            ClaimKind::SetEquality,
            Check::SameSet(conj(&[ax(AxiomId::Ef1)]), conj(&[ax(AxiomId::Ef1Pm)])),
        ),
        none("no EF1± allocation is PO", conj(&[ax(AxiomId::Ef1Pm), Property::Po])),
    ];
    Fixture {
        id: "FIX-T4",
        title: "size-based valuations where no EF1 (or EF1±) allocation is PO",
        instance: inst,
        claims,
    }
}

fn chen_liu() -> Fixture {
    let items = letter_items(2);
    let v = explicit(&items, &[("", "0"), ("a", "1"), ("b", "0"), ("a,b", "2")]);
    let inst = Instance::identical(items, v, 2).expect("fixture");
    let first = alloc(&inst, &[&["a", "b"], &[]]);
    let second = alloc(&inst, &[&[], &["a", "b"]]);
    let claims = vec![
        fact(
            "every item is generally good or generally bad",
            InstanceFact::GenerallyGoodBadItems,
        ),
        fact("b is generally good", InstanceFact::GenerallyGood { agent: 0, item: 1 }),
        claim(
            "PO needs {a,b} in one bundle",
            ClaimKind::SetEquality,
            Check::SetIs(conj(&[Property::Po]), vec![first.clone(), second.clone()]),
        ),
        lacks("({a,b},∅) violates the Chen-Liu variant", &first, ax(AxiomId::ChenLiu)),
        lacks("(∅,{a,b}) violates the Chen-Liu variant", &second, ax(AxiomId::ChenLiu)),
        none(
            "the Chen-Liu variant and PO are incompatible",
            conj(&[ax(AxiomId::ChenLiu), Property::Po]),
        ),
    ];
    Fixture {
        id: "FIX-D1",
        title: "a zero-valued good that makes the Chen-Liu variant incompatible with PO",
        instance: inst,
        claims,
    }
}

fn zero_marginal() -> Fixture {
    let inst = Instance::identical(letter_items(2), Valuation::additive_from_integers(&[0, 1]), 2).expect("fixture");
    let claims = vec![
        none(
            "no allocation is EFX± with zero marginals allowed",
            conj(&[ax(AxiomId::EfxPm0)]),
        ),
        claim(
            "some allocation is EFX±",
            ClaimKind::ExistsAllocation,
            Check::Some(conj(&[ax(AxiomId::EfxPm)])),
        ),
        has(
            "({b},{a}) is EFX±",
            &alloc(&inst, &[&["b"], &["a"]]),
            ax(AxiomId::EfxPm),
        ),
    ];
    Fixture {
        id: "FIX-ZM",
        title: "identical additive values 0 and 1: the zero-marginal variant is unsatisfiable",
        instance: inst,
        claims,
    }
}

pub fn list_fixtures() -> &'static [&'static str] {
    &FIXTURE_IDS
}

pub fn fixture(id: &str) -> Result<Fixture> {
    Ok(match id.to_ascii_uppercase().as_str() {
        "FIX-EX1" => cricket(),
        "FIX-EX2" => courses(),
        "FIX-OBS1" => additive_mixed(),
        "FIX-OBS3" => no_mixed(),
        "FIX-T1" => no_efx(),
        "FIX-T2" => generally_bad(),
        "FIX-T4" => cardinality(),
        "FIX-D1" => chen_liu(),
        "FIX-ZM" => zero_marginal(),
        _ => return Err(Error::UnknownFixture(id.to_string())),
    })
}

pub fn all_fixtures() -> Vec<Fixture> {
    FIXTURE_IDS
        .iter()
        .map(|id| fixture(id).expect("listed fixture"))
        .collect()
}

fn properties_of(check: &Check) -> Vec<Property> {
    match check {
        Check::None(c) | Check::Some(c) | Check::SetIs(c, _) => c.0.clone(),
        Check::SameSet(l, r) => l.0.iter().chain(&r.0).copied().collect(),
        Check::Has(_, p) => vec![*p],
        _ => Vec::new(),
    }
}

fn render_set(inst: &Instance, table: &PropertyTable, ks: &[usize]) -> String {
    let parts: Vec<String> = ks.iter().map(|&k| table.allocations()[k].format(inst)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn render_list(inst: &Instance, allocs: &[Allocation]) -> String {
    let parts: Vec<String> = allocs.iter().map(|a| a.format(inst)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn evaluate_fact(inst: &Instance, f: &InstanceFact) -> (bool, String) {
    match f {
        InstanceFact::Identical => (inst.is_identical(), String::new()),
        InstanceFact::NonzeroMarginals => (inst.has_nonzero_marginals(), String::new()),
        InstanceFact::Additive => (inst.is_additive(), String::new()),
        InstanceFact::DisjointlyNormalised => match inst.disjoint_normalisation() {
            Some(c) => (true, format!("c = {c}")),
            None => (false, String::new()),
        },
        InstanceFact::GenerallyGoodBadItems => (classify(inst).class.generally_good_bad_items, String::new()),
        InstanceFact::NoMixedItems => (classify(inst).class.no_mixed_items, String::new()),
        InstanceFact::Mixed(o) => (is_mixed(inst, *o), String::new()),
        InstanceFact::GenerallyGood { agent, item } => (is_generally_good(inst, *agent, *item), String::new()),
        InstanceFact::GenerallyBad { agent, item } => (is_generally_bad(inst, *agent, *item), String::new()),
        InstanceFact::Marginal {
            agent,
            bundle,
            item,
            value,
        } => match inst.marginal(*agent, *bundle, *item) {
            Ok(m) => (&m == value, format!("marginal {m}")),
            Err(e) => (false, e.to_string()),
        },
        InstanceFact::MixedWitness(w) => (w.is_valid(inst) && is_mixed(inst, w.item), String::new()),
    }
}

fn evaluate(inst: &Instance, table: &PropertyTable, check: &Check, budget: u64) -> Result<(bool, String)> {
    Ok(match check {
        Check::None(c) | Check::Some(c) => {
            let ks = table.matching(c);
            let observed = matches!(check, Check::None(_)) == ks.is_empty();
            let detail = match ks.first() {
                Some(&k) => format!(
                    "{} of {} allocations satisfy {c}, first {}",
                    ks.len(),
                    table.len(),
                    table.allocations()[k].format(inst)
                ),
                None => format!("0 of {} allocations satisfy {c}", table.len()),
            };
            (observed, detail)
        }
        Check::SetIs(c, expected) => {
            let ks = table.matching(c);
            let got: BTreeSet<&Allocation> = ks.iter().map(|&k| &table.allocations()[k]).collect();
            let want: BTreeSet<&Allocation> = expected.iter().collect();
            (got == want, format!("{c} set {}", render_set(inst, table, &ks)))
        }
        Check::SameSet(l, r) => {
            let (lk, rk) = (table.matching(l), table.matching(r));
            (
                lk == rk,
                format!(
                    "{l}: {} allocations {}; {r}: {} allocations {}",
                    lk.len(),
                    render_set(inst, table, &lk),
                    rk.len(),
                    render_set(inst, table, &rk)
                ),
            )
        }
        Check::Has(a, p) => {
            let k = table.index_of(a).expect("fixture allocations belong to the instance");
            let holds = table.holds(k, *p);
            (holds, format!("{p} {}", if holds { "satisfied" } else { "violated" }))
        }
        Check::LeximinSet(expected) => {
            let got = leximin_set(inst, budget)?;
            let same = got.iter().collect::<BTreeSet<_>>() == expected.iter().collect::<BTreeSet<_>>();
            let vector = got
                .first()
                .map(|a| {
                    utility_vector(inst, a)
                        .values()
                        .iter()
                        .map(Value::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .unwrap_or_default();
            (
                same,
                format!("leximin set {} with utilities ({vector})", render_list(inst, &got)),
            )
        }
        Check::Utilities(a, expected) => {
            let u = utility_vector(inst, a);
            let shown: Vec<String> = u.values().iter().map(Value::to_string).collect();
            let mut want = expected.clone();
            want.sort();
            (
                u.values() == want.as_slice(),
                format!("utilities ({})", shown.join(",")),
            )
        }
        Check::ParetoImproves(b, a) => (pareto_improves(inst, b, a), String::new()),
        Check::CutAndChoose(gets) => {
            let out = cut_and_choose(inst, budget)?;
            let efx_pm = crate::axioms::check_efxpm(inst, &out.allocation).satisfied;
            (
                out.allocation.bundle(out.chooser) == *gets && efx_pm,
                format!(
                    "cut {{{}, {}}}, outcome {}",
                    inst.format_bundle(out.pieces[0]),
                    inst.format_bundle(out.pieces[1]),
                    out.allocation.format(inst)
                ),
            )
        }
        Check::Instance(f) => evaluate_fact(inst, f),
    })
}

pub fn verify_fixture(fx: &Fixture, budget: u64) -> Result<Vec<ClaimOutcome>> {
    let props: Vec<Property> = fx.claims.iter().flat_map(|c| properties_of(&c.check)).collect();
    let table = PropertyTable::compute(&fx.instance, &props, budget)?;
    fx.claims
        .iter()
        .map(|c| {
            let (observed, detail) = evaluate(&fx.instance, &table, &c.check, budget)?;
            let status = if observed == c.expected {
                ClaimStatus::Pass
            } else if c.gating {
                ClaimStatus::Fail
            } else {
                ClaimStatus::Discrepancy
            };
            Ok(ClaimOutcome {
                fixture: fx.id.to_string(),
                claim: c.description.clone(),
                kind: c.kind,
                gating: c.gating,
                expected: c.expected,
                observed,
                status,
                detail,
            })
        })
        .collect()
}

/// Checks every claim of the given fixtures (all of them when `ids` is empty).
pub fn verify_claims(ids: &[&str]) -> Result<VerificationReport> {
    verify_claims_with_budget(ids, DEFAULT_BUDGET)
}

pub fn verify_claims_with_budget(ids: &[&str], budget: u64) -> Result<VerificationReport> {
    let fixtures = if ids.is_empty() {
        all_fixtures()
    } else {
        ids.iter().map(|id| fixture(id)).collect::<Result<Vec<_>>>()?
    };
    let mut outcomes = Vec::new();
    for fx in &fixtures {
        outcomes.extend(verify_fixture(fx, budget)?);
    }
    let gating_failures = outcomes.iter().filter(|o| o.status == ClaimStatus::Fail).count();
    let discrepancies = outcomes.iter().filter(|o| o.status == ClaimStatus::Discrepancy).count();
    Ok(VerificationReport {
        outcomes,
        gating_failures,
        discrepancies,
    })
}
