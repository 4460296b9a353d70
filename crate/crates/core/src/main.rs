use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use fairkit::axioms::{check, check_chen_liu_with, chen_liu_context, Verdict, Witness};
use fairkit::catalog::{self, ClaimStatus};
use fairkit::efficiency::{check_po, leximin_set, utility_vector};
use fairkit::format::{allocation_names, export_instance, parse_allocation, parse_instance, InstanceDocument};
use fairkit::properties::{Property, PropertyTable};
use fairkit::protocols::cut_and_choose_with_cutter;
use fairkit::search::{self, GenParams, ItemClass, LandscapeRow, Predicate};
use fairkit::taxonomy::{classify, MarginalAt};
use fairkit::{Allocation, AxiomId, Bundle, Error, Instance, DEFAULT_BUDGET};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "fairkit",
    version,
    about = "Check fairness axioms on small fair-division instances"
)]
struct Cli {
    /// Maximum number of allocations to enumerate.
    #[arg(long, global = true, env = "FAIRKIT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Human-readable tables.
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check axioms on one allocation; exits 1 if any is violated.
    Check {
        instance: PathBuf,
        allocation: PathBuf,
        #[command(flatten)]
        axioms: AxiomArgs,
    },
    /// One row per allocation with a flag for each property.
    Enumerate {
        instance: PathBuf,
        #[command(flatten)]
        axioms: AxiomArgs,
    },
    /// All leximin-optimal allocations.
    Leximin { instance: PathBuf },
    /// Item classification: generally good/bad per agent, mixed items.
    Taxonomy { instance: PathBuf },
    /// Satisfiable counts for the standard property combinations.
    Landscape { instance: PathBuf },
    /// Two-agent cut-and-choose.
    CutAndChoose {
        instance: PathBuf,
        /// Agent that cuts (0 or 1).
        #[arg(long, default_value_t = 0)]
        cutter: usize,
    },
    /// Check every catalogued claim; exits 1 on a gating failure.
    VerifyPaper {
        /// Restrict to these fixtures.
        #[arg(long = "fixture")]
        fixtures: Vec<String>,
    },
    /// Search random instances for a landscape predicate such as "EFX=0".
    Mine(MineArgs),
    /// Built-in example instances.
    Fixture {
        #[command(subcommand)]
        command: FixtureCommand,
    },
}

#[derive(Subcommand)]
enum FixtureCommand {
    List,
    /// Print a fixture in the JSON instance format.
    Export {
        id: String,
    },
}

#[derive(Args)]
struct AxiomArgs {
    /// Comma-separated axioms; `po` for Pareto-optimality.
    #[arg(long, value_delimiter = ',')]
    axioms: Vec<String>,
}

#[derive(Args)]
struct MineArgs {
    /// Conditions on satisfiable counts, comma-separated: "EFX=0", "EFXPM&PO=0,EF1>=1", "EF=all".
    #[arg(long)]
    predicate: String,
    #[arg(long, default_value_t = 2)]
    agents: usize,
    #[arg(long, default_value_t = 4)]
    items: usize,
    #[arg(long, default_value_t = -5, allow_negative_numbers = true)]
    lo: i64,
    #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
    hi: i64,
    #[arg(long)]
    identical: bool,
    #[arg(long)]
    additive: bool,
    #[arg(long)]
    nonzero_marginals: bool,
    #[arg(long)]
    disjointly_normalised: bool,
    /// any, generally-good-bad or no-mixed
    #[arg(long, default_value = "any")]
    item_class: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of instances to examine.
    #[arg(long, default_value_t = 100)]
    count: u64,
    /// Candidates drawn per seed before it is skipped.
    #[arg(long, default_value_t = search::DEFAULT_MAX_ATTEMPTS)]
    max_attempts: u64,
}

struct Out {
    table: bool,
}

impl Out {
    fn json(&self, v: &Json) {
        println!("{}", serde_json::to_string_pretty(v).expect("json value"));
    }

    fn line(&self, v: &Json) {
        println!("{v}");
    }
}

fn read_input(path: &Path) -> Result<String, Error> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Document(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))
    }
}

fn load_instance(path: &Path) -> Result<Instance, Error> {
    parse_instance(&read_input(path)?)
}

fn names(inst: &Instance, b: Bundle) -> Vec<&str> {
    b.items().map(|o| inst.item_name(o)).collect()
}

fn alloc_json(inst: &Instance, a: &Allocation) -> Json {
    json!(allocation_names(inst, a))
}

fn utilities(inst: &Instance, a: &Allocation) -> Vec<String> {
    (0..inst.agents())
        .map(|i| inst.value(i, a.bundle(i)).to_string())
        .collect()
}

fn witness_json(inst: &Instance, w: &Witness) -> Json {
    let mut v = json!({
        "envier": w.envier,
        "envied": w.envied,
        "condition": w.condition,
        "lhs": w.lhs.to_string(),
        "rhs": w.rhs.to_string(),
    });
    if let Some(o) = w.item {
        v["item"] = json!(inst.item_name(o));
    }
    v
}

fn witness_text(inst: &Instance, w: &Witness) -> String {
    let item = w.item.map(|o| format!(" {}", inst.item_name(o))).unwrap_or_default();
    let cond = serde_json::to_value(w.condition).expect("condition");
    format!(
        "{}->{} {}{}: {} < {}",
        w.envier,
        w.envied,
        cond.as_str().unwrap_or_default(),
        item,
        w.lhs,
        w.rhs
    )
}

fn verdict_json(inst: &Instance, prop: Property, v: &Verdict) -> Json {
    let mut out = json!({
        "property": prop.name(),
        "satisfied": v.satisfied,
        "violations": v.violations.iter().map(|w| witness_json(inst, w)).collect::<Vec<_>>(),
    });
    if !v.notes.is_empty() {
        out["notes"] = json!(v.notes.iter().map(|w| witness_json(inst, w)).collect::<Vec<_>>());
    }
    if let Some(b) = &v.improvement {
        out["improvement"] = json!({
            "allocation": alloc_json(inst, b),
            "utilities": utilities(inst, b),
        });
    }
    out
}

fn default_properties(inst: &Instance) -> Vec<Property> {
    let mut props: Vec<Property> = AxiomId::ALL
        .into_iter()
        .filter(|&a| a != AxiomId::ChenLiu || chen_liu_context(inst).is_ok())
        .map(Property::from)
        .collect();
    props.push(Property::Po);
    props
}

fn properties(inst: &Instance, args: &AxiomArgs) -> Result<Vec<Property>, Error> {
    if args.axioms.is_empty() {
        Ok(default_properties(inst))
    } else {
        args.axioms.iter().map(|s| s.parse()).collect()
    }
}

fn verdict(inst: &Instance, alloc: &Allocation, p: Property, budget: u64) -> Result<Verdict, Error> {
    match p {
        Property::Po => check_po(inst, alloc, budget),
        Property::Axiom(AxiomId::ChenLiu) => Ok(check_chen_liu_with(inst, alloc, &chen_liu_context(inst)?)),
        Property::Axiom(id) => check(inst, alloc, id),
    }
}

fn print_rows(header: &[String], rows: &[Vec<String>]) {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].chars().count())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let fmt = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        println!("{}", padded.join("  ").trim_end());
    };
    fmt(header);
    for r in rows {
        fmt(r);
    }
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn cmd_check(out: &Out, budget: u64, instance: &Path, allocation: &Path, axioms: &AxiomArgs) -> Result<u8, Error> {
    let inst = load_instance(instance)?;
    let alloc = parse_allocation(&inst, &read_input(allocation)?)?;
    let props = properties(&inst, axioms)?;
    let verdicts = props
        .iter()
        .map(|&p| verdict(&inst, &alloc, p, budget).map(|v| (p, v)))
        .collect::<Result<Vec<_>, _>>()?;
    let all = verdicts.iter().all(|(_, v)| v.satisfied);
    if out.table {
        println!("allocation {}", alloc.format(&inst));
        let rows: Vec<Vec<String>> = verdicts
            .iter()
            .map(|(p, v)| {
                let detail = match (&v.violations[..], &v.improvement) {
                    ([w, ..], _) => witness_text(&inst, w),
                    ([], Some(b)) => format!("improved by {}", b.format(&inst)),
                    ([], None) => String::new(),
                };
                vec![
                    p.to_string(),
                    if v.satisfied { "ok" } else { "FAIL" }.to_string(),
                    detail,
                ]
            })
            .collect();
        print_rows(&strings(&["property", "result", "witness"]), &rows);
    } else {
        out.json(&json!({
            "allocation": alloc_json(&inst, &alloc),
            "utilities": utilities(&inst, &alloc),
            "satisfied": all,
            "verdicts": verdicts.iter().map(|(p, v)| verdict_json(&inst, *p, v)).collect::<Vec<_>>(),
        }));
    }
    Ok(if all { 0 } else { EXIT_FAIL })
}

fn cmd_enumerate(out: &Out, budget: u64, instance: &Path, axioms: &AxiomArgs) -> Result<u8, Error> {
    let inst = load_instance(instance)?;
    let props = properties(&inst, axioms)?;
    let table = PropertyTable::compute(&inst, &props, budget)?;
    let mut rows = Vec::new();
    for (k, a) in table.allocations().iter().enumerate() {
        if out.table {
            let mut row = vec![k.to_string(), a.format(&inst)];
            row.extend(
                props
                    .iter()
                    .map(|&p| if table.holds(k, p) { "x" } else { "." }.to_string()),
            );
            rows.push(row);
        } else {
            let flags: serde_json::Map<String, Json> = props
                .iter()
                .map(|&p| (p.to_string(), json!(table.holds(k, p))))
                .collect();
            out.line(&json!({
                "index": k,
                "allocation": alloc_json(&inst, a),
                "utilities": utilities(&inst, a),
                "flags": flags,
            }));
        }
    }
    if out.table {
        let mut header = strings(&["#", "allocation"]);
        header.extend(props.iter().map(Property::to_string));
        print_rows(&header, &rows);
    }
    Ok(0)
}

fn cmd_leximin(out: &Out, budget: u64, instance: &Path) -> Result<u8, Error> {
    let inst = load_instance(instance)?;
    for a in leximin_set(&inst, budget)? {
        let vector: Vec<String> = utility_vector(&inst, &a)
            .values()
            .iter()
            .map(|v| v.to_string())
            .collect();
        if out.table {
            println!("{}  utilities ({})", a.format(&inst), vector.join(", "));
        } else {
            out.line(&json!({
                "allocation": alloc_json(&inst, &a),
                "utilities": utilities(&inst, &a),
                "vector": vector,
            }));
        }
    }
    Ok(0)
}

fn marginal_json(inst: &Instance, m: &MarginalAt) -> Json {
    json!({
        "agent": m.agent,
        "bundle": names(inst, m.bundle),
        "marginal": m.marginal.to_string(),
    })
}

fn cmd_taxonomy(out: &Out, instance: &Path) -> Result<u8, Error> {
    let inst = load_instance(instance)?;
    let c = classify(&inst);
    let per_item = |o: usize| -> (Vec<bool>, Vec<bool>) {
        (0..inst.agents())
            .map(|i| (c.matrix.generally_good[i][o], c.matrix.generally_bad[i][o]))
            .unzip()
    };
    if out.table {
        println!("generally good/bad items: {}", c.class.generally_good_bad_items);
        println!("no mixed items: {}", c.class.no_mixed_items);
        let rows: Vec<Vec<String>> = (0..inst.item_count())
            .map(|o| {
                let (good, bad) = per_item(o);
                let per_agent: Vec<&str> = good
                    .iter()
                    .zip(&bad)
                    .map(|(&g, &b)| match (g, b) {
                        (true, true) => "good+bad",
                        (true, false) => "good",
                        (false, true) => "bad",
                        (false, false) => "-",
                    })
                    .collect();
                let witness = c.witnesses[o]
                    .as_ref()
                    .map(|w| {
                        format!(
                            "agent {} +{} at {}, agent {} {} at {}",
                            w.positive.agent,
                            w.positive.marginal,
                            inst.format_bundle(w.positive.bundle),
                            w.negative.agent,
                            w.negative.marginal,
                            inst.format_bundle(w.negative.bundle)
                        )
                    })
                    .unwrap_or_default();
                vec![
                    inst.item_name(o).to_string(),
                    per_agent.join(" "),
                    if c.matrix.mixed[o] { "mixed" } else { "" }.to_string(),
                    witness,
                ]
            })
            .collect();
        print_rows(&strings(&["item", "per agent", "mixed", "witness"]), &rows);
    } else {
        let items: Vec<Json> = (0..inst.item_count())
            .map(|o| {
                let (good, bad) = per_item(o);
                let mut v = json!({
                    "item": inst.item_name(o),
                    "generally_good": good,
                    "generally_bad": bad,
                    "mixed": c.matrix.mixed[o],
                });
                if let Some(w) = &c.witnesses[o] {
                    v["witness"] = json!({
                        "positive": marginal_json(&inst, &w.positive),
                        "negative": marginal_json(&inst, &w.negative),
                    });
                }
                v
            })
            .collect();
        out.json(&json!({ "class": c.class, "items": items }));
    }
    Ok(0)
}

fn landscape_json(inst: &Instance, rows: &[LandscapeRow]) -> Json {
    json!(rows
        .iter()
        .map(|r| json!({
            "combination": r.combination,
            "count": r.count,
            "total": r.total,
            "example": r.example.as_ref().map(|a| alloc_json(inst, a)),
        }))
        .collect::<Vec<_>>())
}

fn print_landscape(inst: &Instance, rows: &[LandscapeRow]) {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.combination.to_string(),
                format!("{}/{}", r.count, r.total),
                r.example.as_ref().map(|a| a.format(inst)).unwrap_or_default(),
            ]
        })
        .collect();
    print_rows(&strings(&["combination", "count", "first example"]), &rows);
}

fn cmd_landscape(out: &Out, budget: u64, instance: &Path) -> Result<u8, Error> {
    let inst = load_instance(instance)?;
    let rows = search::landscape(&inst, budget)?;
    if out.table {
        print_landscape(&inst, &rows);
    } else {
        out.json(&landscape_json(&inst, &rows));
    }
    Ok(0)
}

fn cmd_cut_and_choose(out: &Out, budget: u64, instance: &Path, cutter: usize) -> Result<u8, Error> {
    let inst = load_instance(instance)?;
    let r = cut_and_choose_with_cutter(&inst, cutter, budget)?;
    if out.table {
        println!("cutter {}, chooser {}", r.cutter, r.chooser);
        println!(
            "pieces {} | {}",
            inst.format_bundle(r.pieces[0]),
            inst.format_bundle(r.pieces[1])
        );
        println!(
            "allocation {}  utilities ({})",
            r.allocation.format(&inst),
            utilities(&inst, &r.allocation).join(", ")
        );
    } else {
        out.json(&json!({
            "cutter": r.cutter,
            "chooser": r.chooser,
            "pieces": [names(&inst, r.pieces[0]), names(&inst, r.pieces[1])],
            "allocation": alloc_json(&inst, &r.allocation),
            "utilities": utilities(&inst, &r.allocation),
        }));
    }
    Ok(0)
}

fn cmd_verify(out: &Out, budget: u64, fixtures: &[String]) -> Result<u8, Error> {
    let ids: Vec<&str> = fixtures.iter().map(String::as_str).collect();
    let report = catalog::verify_claims_with_budget(&ids, budget)?;
    let label = |s: ClaimStatus| match s {
        ClaimStatus::Pass => "pass",
        ClaimStatus::Fail => "FAIL",
        ClaimStatus::Discrepancy => "discrepancy",
    };
    if out.table {
        let rows: Vec<Vec<String>> = report
            .outcomes
            .iter()
            .map(|o| {
                vec![
                    o.fixture.clone(),
                    label(o.status).to_string(),
                    if o.gating { "gating" } else { "exploratory" }.to_string(),
                    o.claim.clone(),
                    o.detail.clone(),
                ]
            })
            .collect();
        print_rows(&strings(&["fixture", "status", "kind", "claim", "detail"]), &rows);
    } else {
        for o in &report.outcomes {
            out.line(&serde_json::to_value(o)?);
        }
    }
    eprintln!(
        "{} claims, {} gating failures, {} non-gating discrepancies",
        report.outcomes.len(),
        report.gating_failures,
        report.discrepancies
    );
    Ok(if report.passed() { 0 } else { EXIT_FAIL })
}

fn cmd_mine(out: &Out, budget: u64, a: &MineArgs) -> Result<u8, Error> {
    let predicate: Predicate = a.predicate.parse()?;
    let item_class: ItemClass = a.item_class.parse()?;
    let params = GenParams {
        agents: a.agents,
        items: a.items,
        lo: a.lo,
        hi: a.hi,
        identical: a.identical,
        additive: a.additive,
        nonzero_marginals: a.nonzero_marginals,
        disjointly_normalised: a.disjointly_normalised,
        item_class,
        seed: a.seed,
        max_attempts: a.max_attempts,
    };
    let result = search::mine(&params, &predicate, a.count, budget)?;
    for h in &result.hits {
        if out.table {
            println!("seed {}", h.seed);
            print!("{}", export_instance(&h.instance));
            print_landscape(&h.instance, &h.landscape);
            println!();
        } else {
            out.line(&json!({
                "seed": h.seed,
                "instance": InstanceDocument::from_instance(&h.instance),
                "landscape": landscape_json(&h.instance, &h.landscape),
            }));
        }
    }
    eprintln!(
        "predicate {predicate}: {} hits in {} instances ({} seeds skipped)",
        result.hits.len(),
        result.examined,
        result.skipped.len()
    );
    Ok(0)
}

fn cmd_fixture(out: &Out, command: &FixtureCommand) -> Result<u8, Error> {
    match command {
        FixtureCommand::List => {
            for fx in catalog::all_fixtures() {
                if out.table {
                    println!("{:<9} {}", fx.id, fx.title);
                } else {
                    out.line(&json!({ "id": fx.id, "title": fx.title, "claims": fx.claims.len() }));
                }
            }
        }
        FixtureCommand::Export { id } => print!("{}", export_instance(&catalog::fixture(id)?.instance)),
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let out = Out { table: cli.table };
    let budget = cli.budget;
    match &cli.command {
        Command::Check {
            instance,
            allocation,
            axioms,
        } => cmd_check(&out, budget, instance, allocation, axioms),
        Command::Enumerate { instance, axioms } => cmd_enumerate(&out, budget, instance, axioms),
        Command::Leximin { instance } => cmd_leximin(&out, budget, instance),
        Command::Taxonomy { instance } => cmd_taxonomy(&out, instance),
        Command::Landscape { instance } => cmd_landscape(&out, budget, instance),
        Command::CutAndChoose { instance, cutter } => cmd_cut_and_choose(&out, budget, instance, *cutter),
        Command::VerifyPaper { fixtures } => cmd_verify(&out, budget, fixtures),
        Command::Mine(args) => cmd_mine(&out, budget, args),
        Command::Fixture { command } => cmd_fixture(&out, command),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_INPUT,
            })
        }
    }
}
