//! Scenario files: JSON with `"schema": 1`, a list of named constructions
//! and a list of tasks run in order.

use std::time::Instant;

use hopf_core::group::{GroupSignature, NormalAd};
use hopf_core::homology::{bar_h1, bar_h2, bar_homology};
use hopf_core::hopf::{
    aspherical_formula_check, counterexample_report, cube_from_ad, exactness_check, hopf_formula, hopf_h2,
    two_fold_l1, HopfQuotientReport,
};
use hopf_core::simplicial::cech_complex;
use serde::Deserialize;
use serde_json::Value;

use crate::descriptor::{Built, Descriptor, Env, GroupRef, SubgroupRef};
use crate::error::CliError;
use crate::report::{invariants_value, Report, Row, Section, SectionError};
use crate::suites::{run_suite, Suite, DEFAULT_SEED};

pub const SCHEMA_VERSION: u32 = 1;

/// Scenarios shipped with the binary, runnable by name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("counterexample_m5", include_str!("../scenarios/counterexample_m5.json")),
    ("hopf_v4", include_str!("../scenarios/hopf_v4.json")),
];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: u32,
    pub name: String,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub limits: Limits,
    #[serde(default)]
    pub constructions: Vec<Construction>,
    #[serde(default)]
    pub tasks: Vec<TaskEntry>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Limits {
    /// Applies unless `HOPF_ORDER_CAP` is set.
    pub order_cap: Option<usize>,
    /// Depth of the Čech complexes built by `aspherical` tasks.
    pub depth: Option<usize>,
    /// Seed for sampled checks.
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
pub struct Construction {
    pub name: String,
    /// Generator names for words; `x1, x2, …` by default.
    #[serde(default)]
    pub names: Option<Vec<String>>,
    #[serde(flatten)]
    pub descriptor: Descriptor,
}

#[derive(Debug, Deserialize)]
pub struct TaskEntry {
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub expect: Option<Expect>,
    #[serde(flatten)]
    pub task: Task,
}

/// Expected values; each one present becomes part of the verdict.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    pub order: Option<usize>,
    pub invariants: Option<Vec<u64>>,
    pub cyclic: Option<bool>,
    pub exact: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case")]
pub enum Task {
    Signature { group: GroupRef },
    /// `(R ∩ [K, K]) / [K, R]`.
    HopfH2 { group: GroupRef, normal: SubgroupRef },
    BarH1 { group: GroupRef },
    BarH2 { group: GroupRef },
    BarHomology { group: GroupRef, degree: usize },
    /// `(∩R_i ∩ Γ_k) / D_k` for the ad of the given parts.
    HopfFormula { group: GroupRef, parts: Vec<SubgroupRef>, k: usize },
    TwoFold { group: GroupRef, r1: SubgroupRef, r2: SubgroupRef, k: usize },
    /// Whether the cube of the ad maps onto its limits.
    Exactness { group: GroupRef, parts: Vec<SubgroupRef> },
    Counterexample { m: u64 },
    /// π_n Z_k of the Čech complex of a surjection, against the formula.
    Aspherical { surjection: String, n: usize, k: usize },
    Verify { suite: String },
}

impl Task {
    fn kind(&self) -> &'static str {
        match self {
            Task::Signature { .. } => "signature",
            Task::HopfH2 { .. } => "hopf_h2",
            Task::BarH1 { .. } => "bar_h1",
            Task::BarH2 { .. } => "bar_h2",
            Task::BarHomology { .. } => "bar_homology",
            Task::HopfFormula { .. } => "hopf_formula",
            Task::TwoFold { .. } => "two_fold",
            Task::Exactness { .. } => "exactness",
            Task::Counterexample { .. } => "counterexample",
            Task::Aspherical { .. } => "aspherical",
            Task::Verify { .. } => "verify",
        }
    }
}

/// Reads a scenario, reporting JSON syntax errors by line and column.
pub fn parse_scenario(text: &str, origin: &str) -> Result<Scenario, CliError> {
    let scenario: Scenario = serde_json::from_str(text)
        .map_err(|e| CliError::parse(format!("{origin}:{}:{}", e.line(), e.column()), e.to_string()))?;
    if scenario.schema != SCHEMA_VERSION {
        return Err(CliError::parse(
            format!("{origin}: schema"),
            format!("unsupported schema {}; this build reads schema {SCHEMA_VERSION}", scenario.schema),
        ));
    }
    Ok(scenario)
}

/// A bundled scenario by name, or a file path.
pub fn load_scenario(name_or_path: &str) -> Result<Scenario, CliError> {
    match std::fs::read_to_string(name_or_path) {
        Ok(text) => parse_scenario(&text, name_or_path),
        Err(source) => match BUNDLED.iter().find(|(name, _)| *name == name_or_path) {
            Some((name, text)) => parse_scenario(text, name),
            None => Err(CliError::Io { path: name_or_path.to_string(), source }),
        },
    }
}

/// What a task measured, in a form `expect` can be checked against.
#[derive(Default)]
struct Outcome {
    rows: Vec<Row>,
    provenance: Vec<hopf_core::hopf::Provenance>,
    order: Option<usize>,
    invariants: Option<Option<Vec<u64>>>,
    cyclic: Option<bool>,
    exact: Option<bool>,
    sections: Vec<Section>,
}

impl Outcome {
    fn quotient(report: HopfQuotientReport, item: &str) -> Self {
        let invariants = report.invariants().map(|i| i.factors().to_vec());
        let row = Row::new(item)
            .value("numerator order", report.numerator_order)
            .value("denominator order", report.denominator_order)
            .signature("", &report.quotient)
            .value("cyclic", report.is_cyclic());
        Outcome {
            rows: vec![row],
            order: Some(report.order()),
            invariants: Some(invariants),
            cyclic: Some(report.is_cyclic()),
            provenance: vec![report.provenance],
            ..Outcome::default()
        }
    }

    fn signature(sig: &GroupSignature, item: &str) -> Self {
        let cyclic = sig.invariants.as_ref().map(|i| i.is_cyclic());
        Outcome {
            rows: vec![Row::new(item).signature("", sig).invariants("abelianization", Some(&sig.abelianization))],
            order: Some(sig.order),
            invariants: Some(sig.invariants.as_ref().map(|i| i.factors().to_vec())),
            cyclic: Some(cyclic.unwrap_or(false)),
            ..Outcome::default()
        }
    }

    fn homology(inv: hopf_core::group::AbelianInvariants, item: &str) -> Self {
        let order = inv.order().map(|o| o as usize);
        Outcome {
            rows: vec![Row::new(item).invariants("invariants", Some(&inv))],
            order,
            cyclic: Some(inv.is_cyclic()),
            invariants: Some(Some(inv.factors().to_vec())),
            ..Outcome::default()
        }
    }

    /// Rows for each expectation, with verdicts.
    fn check(&self, expect: &Expect) -> Vec<Row> {
        let mut rows = Vec::new();
        let mut compare = |what: &str, expected: Value, actual: Option<Value>| {
            let passed = actual.as_ref() == Some(&expected);
            rows.push(
                Row::new(format!("expect {what}"))
                    .value("expected", expected)
                    .value("actual", actual.unwrap_or(Value::Null))
                    .verdict(passed),
            );
        };
        if let Some(o) = expect.order {
            compare("order", o.into(), self.order.map(Value::from));
        }
        if let Some(inv) = &expect.invariants {
            compare("invariants", Value::from(inv.clone()), self.invariants.clone().map(|i| i.map_or(Value::Null, Value::from)));
        }
        if let Some(c) = expect.cyclic {
            compare("cyclic", c.into(), self.cyclic.map(Value::from));
        }
        if let Some(e) = expect.exact {
            compare("exact", e.into(), self.exact.map(Value::from));
        }
        rows
    }
}

fn run_task(env: &mut Env, task: &Task, limits: &Limits, timings: bool, at: &str) -> Result<Outcome, CliError> {
    let core = |e| CliError::core(at.to_string(), e);
    let ad_of = |env: &mut Env, group: &GroupRef, parts: &[SubgroupRef]| -> Result<NormalAd, CliError> {
        let g = env.group(group, &format!("{at}.group"))?;
        let parts = parts
            .iter()
            .enumerate()
            .map(|(i, p)| env.normal_subgroup(&g, p, &format!("{at}.parts[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        NormalAd::new(&g.group, parts).map_err(core)
    };
    Ok(match task {
        Task::Signature { group } => {
            let g = env.group(group, &format!("{at}.group"))?;
            Outcome::signature(&GroupSignature::of(&g.group).map_err(core)?, &group.describe())
        }
        Task::HopfH2 { group, normal } => {
            let g = env.group(group, &format!("{at}.group"))?;
            let r = env.normal_subgroup(&g, normal, &format!("{at}.normal"))?;
            Outcome::quotient(hopf_h2(&g.group, &r).map_err(core)?, "quotient")
        }
        Task::BarH1 { group } => {
            let g = env.group(group, &format!("{at}.group"))?;
            Outcome::homology(bar_h1(&g.group).map_err(core)?, "H_1")
        }
        Task::BarH2 { group } => {
            let g = env.group(group, &format!("{at}.group"))?;
            Outcome::homology(bar_h2(&g.group).map_err(core)?, "H_2")
        }
        Task::BarHomology { group, degree } => {
            if *degree == 0 {
                return Err(CliError::parse(format!("{at}.degree"), "degree must be at least 1"));
            }
            let g = env.group(group, &format!("{at}.group"))?;
            Outcome::homology(bar_homology(&g.group, *degree).map_err(core)?, &format!("H_{degree}"))
        }
        Task::HopfFormula { group, parts, k } => {
            let ad = ad_of(env, group, parts)?;
            Outcome::quotient(hopf_formula(&ad, *k).map_err(core)?, "quotient")
        }
        Task::TwoFold { group, r1, r2, k } => {
            let g = env.group(group, &format!("{at}.group"))?;
            let a = env.normal_subgroup(&g, r1, &format!("{at}.r1"))?;
            let b = env.normal_subgroup(&g, r2, &format!("{at}.r2"))?;
            Outcome::quotient(two_fold_l1(&g.group, &a, &b, *k).map_err(core)?, "quotient")
        }
        Task::Exactness { group, parts } => {
            let ad = ad_of(env, group, parts)?;
            let report = exactness_check(&cube_from_ad(&ad).map_err(core)?).map_err(core)?;
            let rows = report
                .entries
                .iter()
                .map(|e| {
                    Row::new(format!("{:?}", e.subset))
                        .value("node order", e.node_order)
                        .value("limit order", e.limit_order)
                        .value("image order", e.image_order)
                        .value("onto", e.surjective)
                })
                .collect();
            Outcome { rows, exact: Some(report.exact()), ..Outcome::default() }
        }
        Task::Counterexample { m } => counterexample_outcome(*m).map_err(core)?,
        Task::Aspherical { surjection, n, k } => {
            let f = env.hom(surjection, &format!("{at}.surjection"))?;
            let depth = limits.depth.unwrap_or(0).max(n + 1);
            let aug = cech_complex(&f, depth).map_err(core)?;
            let r = aspherical_formula_check(&aug, *n, *k).map_err(core)?;
            let row = Row::new(format!("Čech({surjection})"))
                .value("n", *n)
                .value("k", *k)
                .value("aspherical", r.aspherical)
                .signature("π_n Z_k", &r.homotopy)
                .signature("formula", &r.formula.quotient)
                .verdict(r.aspherical && r.equal());
            let mut out = Outcome::quotient(r.formula.clone(), "formula");
            out.rows = vec![row];
            out
        }
        Task::Verify { suite } => {
            let parsed: Suite = clap::ValueEnum::from_str(suite, false)
                .map_err(|_| CliError::parse(format!("{at}.suite"), format!("unknown suite {suite:?}")))?;
            Outcome { sections: run_suite(parsed, limits.seed.unwrap_or(DEFAULT_SEED), timings), ..Outcome::default() }
        }
    })
}

fn counterexample_outcome(m: u64) -> hopf_core::Result<Outcome> {
    let r = counterexample_report(m)?;
    let mut out = Outcome::quotient(r.quotient.clone(), "quotient");
    let empty = r.exactness.entry(&[]).expect("the empty set is a proper subset");
    out.rows.push(
        Row::new("cube at ∅")
            .value("limit order", empty.limit_order)
            .value("image order", empty.image_order)
            .value("onto", empty.surjective),
    );
    out.rows.push(Row::new("H_3 of F / R_1R_2R_3").value("invariants", invariants_value(Some(&r.corner_h3))));
    out.rows.push(
        Row::new(format!("FN(2,3,{m})"))
            .value("group order", r.group_order)
            .value("relator closure orders", r.relator_orders.clone())
            .verdict(r.reproduces()),
    );
    out.exact = Some(r.exactness.exact());
    Ok(out)
}

/// Builds the constructions, then runs the tasks in order. Parse errors
/// abort the run; computation errors are recorded against their task.
pub fn run_scenario(scenario: &Scenario, timings: bool) -> Result<Report, CliError> {
    let mut env = Env::new();
    for (i, c) in scenario.constructions.iter().enumerate() {
        let at = format!("constructions[{i}] ({})", c.name);
        let built = env.build(&c.descriptor, c.names.clone(), &c.name, &at)?;
        if c.names.is_some() && !matches!(built, Built::Group(_) | Built::Quotient(..)) {
            return Err(CliError::parse(at, "only groups take generator names"));
        }
        env.define(&c.name, built, &at)?;
    }
    let mut sections = Vec::new();
    for (i, entry) in scenario.tasks.iter().enumerate() {
        let at = format!("tasks[{i}]");
        let name = entry.label.clone().unwrap_or_else(|| format!("{at}: {}", entry.task.kind()));
        let start = Instant::now();
        let mut section = Section::new(name).input("task", entry.task.kind());
        for (k, v) in task_inputs(&entry.task) {
            section = section.input(k, v);
        }
        match run_task(&mut env, &entry.task, &scenario.limits, timings, &at) {
            Ok(outcome) => {
                if !outcome.sections.is_empty() && entry.expect.is_some() {
                    return Err(CliError::parse(format!("{at}.expect"), "verify tasks take no expectations"));
                }
                section.rows = outcome.rows.clone();
                if let Some(expect) = &entry.expect {
                    section.rows.extend(outcome.check(expect));
                }
                section.provenance = outcome.provenance;
                if timings {
                    section.wall_ms = Some(start.elapsed().as_millis() as u64);
                }
                sections.push(section);
                sections.extend(outcome.sections);
            }
            Err(CliError::Core { context, source }) => {
                section.error = Some(SectionError::from_core(&context, &source));
                if timings {
                    section.wall_ms = Some(start.elapsed().as_millis() as u64);
                }
                sections.push(section);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Report::new(format!("scenario {}", scenario.name), sections))
}

fn task_inputs(task: &Task) -> Vec<(&'static str, Value)> {
    let parts = |ps: &[SubgroupRef]| Value::from(ps.iter().map(SubgroupRef::describe).collect::<Vec<_>>());
    match task {
        Task::Signature { group } | Task::BarH1 { group } | Task::BarH2 { group } => vec![("group", group.describe().into())],
        Task::BarHomology { group, degree } => vec![("group", group.describe().into()), ("degree", (*degree).into())],
        Task::HopfH2 { group, normal } => vec![("group", group.describe().into()), ("normal", normal.describe().into())],
        Task::HopfFormula { group, parts: ps, k } => {
            vec![("group", group.describe().into()), ("parts", parts(ps)), ("k", (*k).into())]
        }
        Task::TwoFold { group, r1, r2, k } => vec![
            ("group", group.describe().into()),
            ("r1", r1.describe().into()),
            ("r2", r2.describe().into()),
            ("k", (*k).into()),
        ],
        Task::Exactness { group, parts: ps } => vec![("group", group.describe().into()), ("parts", parts(ps))],
        Task::Counterexample { m } => vec![("m", (*m).into())],
        Task::Aspherical { surjection, n, k } => {
            vec![("surjection", surjection.clone().into()), ("n", (*n).into()), ("k", (*k).into())]
        }
        Task::Verify { suite } => vec![("suite", suite.clone().into())],
    }
}

/// A scenario holding one task, for the direct subcommands.
pub fn single_task(name: &str, task: Task) -> Scenario {
    Scenario {
        schema: SCHEMA_VERSION,
        name: name.to_string(),
        description: None,
        limits: Limits::default(),
        constructions: Vec::new(),
        tasks: vec![TaskEntry { label: Some(name.to_string()), expect: None, task }],
    }
}
