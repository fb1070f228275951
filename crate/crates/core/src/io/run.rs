use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::cache::{record_key, Cache};
use super::manifest::{RunManifest, Task};
use crate::chain::{bigraded_homology, homology_by_degree, BigradedDims};
use crate::cobordism::{Sides, SkeinTriangle, TriangleKind};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::induction::{verify_theorem_sinv, Harness, HarnessOptions, InductionReport, KnotInput, SinvReport};
use crate::kh::{complex_with, s_invariant, Deformation, Frobenius, KhOptions};
use crate::link::LinkDiagram;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Failed(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleSummary {
    pub crossing: usize,
    pub merge: bool,
    pub positive: bool,
    /// Degree of the map out of `L_u` (positive crossing) or into it (negative).
    pub degree: i32,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskResult {
    Bigraded { dims: BigradedDims, poincare: String },
    Filtered { dims: BTreeMap<i32, usize> },
    S { s: i32 },
    Triangles { triangles: Vec<TriangleSummary> },
    Induction { report: InductionReport },
    Sinv { report: SinvReport },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub key: String,
    pub knot: String,
    pub task: Task,
    pub prime: u32,
    pub deformation: Deformation,
    pub engine_version: String,
    pub wall_ms: u64,
    pub status: Status,
    pub result: Option<TaskResult>,
}

impl ResultRecord {
    /// Equal apart from the wall time.
    pub fn same_result(&self, other: &ResultRecord) -> bool {
        ResultRecord { wall_ms: 0, ..self.clone() } == ResultRecord { wall_ms: 0, ..other.clone() }
    }

    fn summary(&self) -> String {
        let Some(r) = &self.result else { return String::new() };
        match r {
            TaskResult::Bigraded { poincare, .. } => poincare.clone(),
            TaskResult::Filtered { dims } => dims.iter().map(|(h, n)| format!("h={h}: {n}")).collect::<Vec<_>>().join(", "),
            TaskResult::S { s } => format!("s = {s}"),
            TaskResult::Triangles { triangles } => {
                format!("{}/{} exact", triangles.iter().filter(|t| t.exact).count(), triangles.len())
            }
            TaskResult::Induction { report } => format!(
                "{} entries: {} verified, {} failed, {} skipped",
                report.entries.len(),
                report.verified(),
                report.failed(),
                report.skipped()
            ),
            TaskResult::Sinv { report } => {
                format!("s(K) = {}, s(K_{}^1) = {} ({} crossings)", report.s_knot, report.n, report.s_cable, report.crossings)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub records: Vec<ResultRecord>,
}

impl Ledger {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let (status, why) = match &r.status {
                Status::Verified => ("ok", String::new()),
                Status::Failed(w) => ("FAILED", format!(" [{w}]")),
                Status::Skipped(w) => ("skipped", format!(" [{w}]")),
            };
            writeln!(out, "{}\t{}\tF_{}\t{}\t{}{}", r.knot, r.task.name(), r.prime, status, r.summary(), why).unwrap();
        }
        out
    }

    /// 0 if everything was verified, 1 on any failure, otherwise 2 if anything was skipped.
    pub fn exit_code(&self) -> i32 {
        if self.records.iter().any(|r| matches!(r.status, Status::Failed(_))) {
            1
        } else if self.records.iter().any(|r| matches!(r.status, Status::Skipped(_))) {
            2
        } else {
            0
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub ledger: Ledger,
    pub computed: usize,
    pub cached: usize,
}

struct Ctx {
    field: PrimeField,
    deformation: Deformation,
    budget: usize,
    opts: KhOptions,
}

fn over_budget(d: &LinkDiagram, budget: usize) -> Option<Status> {
    (d.num_crossings() > budget).then(|| Status::Skipped(format!("{} crossings over the budget of {budget}", d.num_crossings())))
}

fn execute(ctx: &Ctx, name: &str, d: &LinkDiagram, task: &Task) -> Result<(Status, Option<TaskResult>)> {
    let frob = Frobenius::new(ctx.field, ctx.deformation)?;
    let lee_like = if frob.is_deformed() { frob } else { Frobenius::new(ctx.field, Deformation::Lee)? };
    match task {
        Task::Homology => {
            if let Some(s) = over_budget(d, ctx.budget) {
                return Ok((s, None));
            }
            let (c, _) = complex_with(d, frob, &[], &ctx.opts)?;
            let r = if ctx.deformation == Deformation::Khovanov {
                let dims = bigraded_homology(&c)?;
                TaskResult::Bigraded { poincare: dims.poincare(), dims }
            } else {
                TaskResult::Filtered { dims: homology_by_degree(&c)? }
            };
            Ok((Status::Verified, Some(r)))
        }
        Task::SInvariant => {
            if let Some(s) = over_budget(d, ctx.budget) {
                return Ok((s, None));
            }
            Ok((Status::Verified, Some(TaskResult::S { s: s_invariant(d, lee_like, &ctx.opts)? })))
        }
        Task::Triangle { crossing } => {
            if let Some(s) = over_budget(d, ctx.budget) {
                return Ok((s, None));
            }
            let xs: Vec<usize> = match crossing {
                Some(x) if *x >= d.num_crossings() => {
                    return Err(Error::OutOfRange(format!("crossing {x} of a {}-crossing diagram", d.num_crossings())))
                }
                Some(x) => vec![*x],
                None => (0..d.num_crossings()).collect(),
            };
            let mut triangles = vec![];
            for x in xs {
                let u_flip = Sides::new(d, x)?.unoriented_orientations().first().map(|c| c.1.clone());
                let t = SkeinTriangle::new(d, x, frob, u_flip, &ctx.opts)?;
                let check = t.check(&ctx.opts)?;
                triangles.push(TriangleSummary {
                    crossing: x,
                    merge: t.kind() == TriangleKind::Merge,
                    positive: t.is_positive(),
                    degree: t.degree(),
                    exact: check.ok(),
                });
            }
            let status = match triangles.iter().find(|t| !t.exact) {
                Some(t) => Status::Failed(format!("triangle at crossing {} is not exact", t.crossing)),
                None => Status::Verified,
            };
            Ok((status, Some(TaskResult::Triangles { triangles })))
        }
        Task::Induct { max_m } => {
            let knot = KnotInput::new(name, d.clone())?;
            let opts = HarnessOptions { field: ctx.field, kh: ctx.opts.clone(), budget_crossings: ctx.budget, parallel: true };
            let report = Harness::new(knot, opts).run(*max_m)?;
            let status = if report.failed() > 0 {
                Status::Failed(format!("{} entries failed", report.failed()))
            } else if report.skipped() > 0 {
                Status::Skipped(format!("{} entries over the crossing budget", report.skipped()))
            } else {
                Status::Verified
            };
            Ok((status, Some(TaskResult::Induction { report })))
        }
        Task::VerifySinv { n } => {
            let knot = KnotInput::new(name, d.clone())?;
            match verify_theorem_sinv(&knot, *n, ctx.field, &ctx.opts, ctx.budget)? {
                None => Ok((Status::Skipped(format!("the cable is over the budget of {} crossings", ctx.budget)), None)),
                Some(report) => {
                    let status = if report.holds() {
                        Status::Verified
                    } else {
                        Status::Failed(format!("s(K_{n}^1) = {} but s(K) - 2n = {}", report.s_cable, report.s_knot - 2 * *n as i32))
                    };
                    Ok((status, Some(TaskResult::Sinv { report })))
                }
            }
        }
    }
}

/// Runs every task on every knot, serving records from `cache` when possible. Problems
/// with single knots or tasks become failed records; only an unusable field is an error.
pub fn run(m: &RunManifest, cache: &Cache) -> Result<RunOutcome> {
    let field = PrimeField::new(m.field)?;
    Frobenius::new(field, m.deformation)?;
    let mut opts = KhOptions::default();
    if let Some(b) = m.memory_budget {
        opts.budget = b;
    }
    let ctx = Ctx { field, deformation: m.deformation, budget: m.budget_crossings, opts };
    let (mut computed, mut cached) = (0, 0);
    let mut records = vec![];
    for k in &m.knots {
        let d = k.validated();
        for task in &m.tasks {
            let base = |key: String, status, result| ResultRecord {
                key,
                knot: k.name.clone(),
                task: task.clone(),
                prime: m.field,
                deformation: m.deformation,
                engine_version: ENGINE_VERSION.into(),
                wall_ms: 0,
                status,
                result,
            };
            let d = match &d {
                Ok(d) => d,
                Err(e) => {
                    records.push(base(String::new(), Status::Failed(e.to_string()), None));
                    continue;
                }
            };
            let key = record_key(d, task, m.field, m.deformation, m.budget_crossings, m.memory_budget);
            if let Some(r) = cache.get(&key) {
                cached += 1;
                records.push(r);
                continue;
            }
            let start = Instant::now();
            let (status, result) = match execute(&ctx, &k.name, d, task) {
                Ok(x) => x,
                Err(Error::MemoryBudget { budget, processed, .. }) => {
                    (Status::Skipped(format!("memory budget of {budget} generators hit after {processed} crossings")), None)
                }
                Err(e) => (Status::Failed(e.to_string()), None),
            };
            let mut r = base(key, status, result);
            r.wall_ms = start.elapsed().as_millis() as u64;
            computed += 1;
            if !matches!(r.status, Status::Failed(_)) {
                cache.put(&r)?;
            }
            records.push(r);
        }
    }
    Ok(RunOutcome { ledger: Ledger { records }, computed, cached })
}
