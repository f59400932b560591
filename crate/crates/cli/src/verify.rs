//! The end-to-end verification pipeline: independent checks per group,
//! fanned out over a worker pool and merged in a fixed order.

use std::time::Instant;

use cs::{canonical_vertex, chern_simons_at, cs_along_path, cs_direct, CsValue};
use donaldson::{build_model, materialize_levels, Orientation};
use equivariant::{bar_oracle, Flavor};
use exactmath::Field;
use floer::{norm_vanishing_and_splitting, truncated_ss, Window};
use grouprep::{character_table, GroupId};
use mckay::{compare_with_reference, reference_graph, s_graph};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::commands::{assembled, check_fixture, closed_form_tag, flavor_word, setting_report, window_for};
use crate::{with_field, CliError, RunConfig, SCHEMA_VERSION, TOOL_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    /// What the numbers are checked against, e.g. "closed_form.minus.bar".
    pub check: String,
    pub group: String,
    pub status: Status,
    /// First failing place (degree, edge, …) on FAIL.
    pub location: Option<String>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
    /// Only with `timings`, so that reports are otherwise byte-identical.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out += &format!("{status} {:<6} {:<28} {}", c.group, c.check, c.detail);
            if let Some(l) = &c.location {
                out += &format!(" [at {l}]");
            }
            if let Some(s) = c.seconds {
                out += &format!(" ({s:.2}s)");
            }
            out.push('\n');
        }
        out += &format!("{} passed, {} failed\n", self.passed, self.failed);
        out
    }
}

/// One unit of work.
#[derive(Clone, Debug)]
enum Job {
    Tables,
    SGraph,
    Figure,
    Oracle,
    Accounting,
    ClosedForm(Orientation, Flavor),
    Duality,
    Norm,
    ChernSimons,
    Fixture(String),
}

/// Outcome of one job: (pass, detail, location).
type Outcome = (bool, String, Option<String>);

fn pass(detail: impl Into<String>) -> Result<Outcome, CliError> {
    Ok((true, detail.into(), None))
}

fn fail(detail: impl Into<String>, location: impl Into<String>) -> Result<Outcome, CliError> {
    Ok((false, detail.into(), Some(location.into())))
}

const SETTINGS: [(Orientation, Flavor); 5] = [
    (Orientation::Bar, Flavor::Plus),
    (Orientation::Bar, Flavor::Minus),
    (Orientation::Bar, Flavor::Infinity),
    (Orientation::Std, Flavor::Minus),
    (Orientation::Std, Flavor::Plus),
];

fn jobs_for(g: GroupId, cfg: &RunConfig) -> Vec<Job> {
    let mut jobs = vec![Job::Tables, Job::SGraph];
    if g.parameter().is_none() {
        jobs.push(Job::Figure);
    }
    jobs.extend([Job::Oracle, Job::Accounting]);
    for (o, f) in SETTINGS {
        if cfg.orientations().contains(&o) && cfg.flavors.contains(&f) {
            jobs.push(Job::ClosedForm(o, f));
        }
    }
    jobs.extend([Job::Duality, Job::Norm, Job::ChernSimons]);
    jobs
}

fn job_name(job: &Job) -> String {
    match job {
        Job::Tables => "tables.orthogonality".into(),
        Job::SGraph => "reference.sgraph".into(),
        Job::Figure => "figure.dci".into(),
        Job::Oracle => "oracle.bar".into(),
        Job::Accounting => "ss.accounting".into(),
        Job::ClosedForm(o, f) => closed_form_tag(*o, *f),
        Job::Duality => "duality.std_plus".into(),
        Job::Norm => "triangle.norm".into(),
        Job::ChernSimons => "cs.golden".into(),
        Job::Fixture(_) => "fixture.sgraph".into(),
    }
}

fn tables(g: GroupId) -> Result<Outcome, CliError> {
    let t = character_table(g);
    let sizes: u64 = t.classes.iter().map(|c| c.size).sum();
    if sizes != g.order() {
        return fail(format!("class sizes sum to {sizes}"), "class sizes");
    }
    for (i, a) in t.irreps.iter().enumerate() {
        for (j, b) in t.irreps.iter().enumerate() {
            let ip = t.inner(&a.values, &b.values).map_err(|e| CliError::Usage(e.to_string()))?;
            let want = if i == j { 1 } else { 0 };
            if ip != exactmath::Q::from_i64(want) {
                return fail(format!("⟨χ_{}, χ_{}⟩ = {ip}", a.name, b.name), format!("{}×{}", a.name, b.name));
            }
        }
    }
    pass(format!("{} irreducible characters orthonormal", t.irreps.len()))
}

fn sgraph(g: GroupId) -> Result<Outcome, CliError> {
    let s = s_graph(g)?;
    let diff = compare_with_reference(&s, &reference_graph(g));
    match diff.first() {
        None => pass(format!("{} vertices, {} edges, labels and gradings match", s.len(), s.edges.len())),
        Some(first) => fail(format!("{} mismatches", diff.len()), first.clone()),
    }
}

/// Generator ranks at (s, t) for s ∈ {0, 4}, t ∈ {0, 2, 3}, and the arrow
/// labels out of columns 8 and 4, as drawn for the exceptional groups.
fn figure(g: GroupId) -> Result<Outcome, CliError> {
    let (ranks, arrows): ([(usize, usize, usize); 2], [&str; 2]) = match g {
        GroupId::BinaryTetrahedral => ([(2, 1, 0), (1, 0, 1)], ["(1,3)", "(0)"]),
        GroupId::BinaryOctahedral => ([(2, 0, 1), (2, 0, 1)], ["(1,3)", "(1,3)"]),
        GroupId::BinaryIcosahedral => ([(2, 0, 1), (1, 0, 1)], ["(1,3)", "(4)"]),
        _ => return pass("no figure for this group"),
    };
    let m = build_model(g, Orientation::Bar)?;
    for (s, (r0, r2, r3)) in [0i64, 4].into_iter().zip(ranks) {
        let got = (m.at(s, 0).len(), m.at(s, 2).len(), m.at(s, 3).len());
        if got != (r0, r2, r3) {
            return fail(format!("ranks {got:?}, expected {:?}", (r0, r2, r3)), format!("column {s}"));
        }
    }
    for (s, want) in [8i64, 4].into_iter().zip(arrows) {
        let a = m.arrows_from(s);
        let mut coeffs: Vec<i64> = a.iter().flat_map(|a| a.coeffs.clone()).collect();
        // The O* arrow out of column 4 is compared as a multiset.
        coeffs.sort_unstable();
        let mut wanted: Vec<i64> = want.trim_matches(|c| c == '(' || c == ')').split(',').map(|x| x.parse().unwrap()).filter(|&x| x != 0).collect();
        wanted.sort_unstable();
        if a.len() != 1 || coeffs != wanted {
            return fail(format!("arrow {:?}, expected {want}", a.iter().map(|a| a.label()).collect::<Vec<_>>()), format!("arrow from {s}"));
        }
    }
    pass("bidegree ranks and arrow labels match")
}

fn oracle<F: Field>(g: GroupId) -> Result<Outcome, CliError> {
    let mut count = 0;
    for o in [Orientation::Bar, Orientation::Std] {
        let n = materialize_levels(&build_model(g, o)?, -1, 23);
        for flavor in [Flavor::Plus, Flavor::Minus] {
            let where_ = format!("{o} {}", flavor_word(flavor));
            let r = match bar_oracle::<F>(&n, flavor, 0, 23) {
                Ok(r) => r,
                Err(e) => return fail(e.to_string(), where_),
            };
            if let Some((d, _)) = r.model_dims.iter().find(|(d, x)| r.oracle_dims.get(d) != Some(x)) {
                return fail("homology dimensions differ", format!("{where_} degree {d}"));
            }
            count += 1;
        }
    }
    pass(format!("{count} literal bar complexes chain-isomorphic to the models on levels (−1, 23]"))
}

fn accounting<F: Field>(g: GroupId) -> Result<Outcome, CliError> {
    let mut count = 0;
    for o in [Orientation::Bar, Orientation::Std] {
        let m = build_model(g, o)?;
        for (q, width) in [(-1, 16), (-9, 24), (3, 12)] {
            let n = materialize_levels(&m, q, q + width);
            for flavor in Flavor::ALL {
                let ss = truncated_ss::<F>(&n, flavor, q - 2, q + width + 6);
                if let Some((deg, e, h)) = ss.defects().first() {
                    return fail(format!("Σ E^∞ = {e} but dim H = {h}"), format!("{o} {} levels ({q}, {}] degree {deg}", flavor_word(flavor), q + width));
                }
                count += 1;
            }
        }
    }
    pass(format!("{count} truncated sequences converge to direct homology"))
}

fn closed_form<F: Field>(g: GroupId, o: Orientation, flavor: Flavor, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let r = setting_report::<F>(g, o, flavor, cfg)?;
    let (lo, hi) = (r.window.lo, r.window.hi);
    if !r.direct_vs_assembled.pass {
        return fail(format!("assembled {} disagrees with direct homology", r.assembled), r.direct_vs_assembled.mismatches[0].clone());
    }
    match &r.closed_form_vs_assembled {
        Some(c) if !c.pass => fail(format!("closed form {} disagrees", r.closed_form.clone().unwrap_or_default()), c.mismatches[0].clone()),
        Some(_) => pass(format!("{} in degrees [{lo}, {hi}]", r.assembled)),
        None => pass(format!("{} matches direct homology in degrees [{lo}, {hi}] (no closed form)", r.assembled)),
    }
}

/// dim I⁺_n(Y_Γ) = dim I⁻_{−n}(Ȳ_Γ), and the std + closed form is the
/// dual of the bar − one.
fn duality<F: Field>(g: GroupId, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let bar = build_model(g, Orientation::Bar)?;
    let w: Window = window_for(cfg, &bar);
    let (plus, _) = assembled::<F>(g, Orientation::Std, Flavor::Plus)?;
    let (minus, _) = assembled::<F>(g, Orientation::Bar, Flavor::Minus)?;
    let a = plus.invariants::<F>(&w, 1);
    let b = minus.invariants::<F>(&w.dual(), 1);
    for (n, d) in &a.dims {
        let e = b.dims.get(&-n).copied().unwrap_or(0);
        if *d != e {
            return fail(format!("dim I⁺_{n}(Y) = {d} but dim I⁻_{}(Ȳ) = {e}", -n), format!("degree {n}"));
        }
    }
    pass(format!("degrees [{}, {}]", w.lo, w.hi))
}

fn norm<F: Field>(g: GroupId, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (lo, hi) = cfg.degrees;
    match norm_vanishing_and_splitting::<F>(g, lo, hi.min(lo + 23)) {
        Ok(r) => pass(format!("ν = 0 and splitting in {} degrees; U bijective on H^∞ in {}", r.checked.len(), r.u_bijective.len())),
        Err(floer::FloerError::SplittingViolation { degree, detail }) => fail(detail, format!("degree {degree}")),
        Err(e) => Err(e.into()),
    }
}

fn chern_simons(g: GroupId) -> Result<Outcome, CliError> {
    let s = s_graph(g)?;
    let n = g.order() as i64;
    let Some(q) = canonical_vertex(&s) else { return fail("no vertex carries Q", "Q") };
    let got = chern_simons_at(&s, q, Orientation::Std)?;
    if got != CsValue::new(-1, n) {
        return fail(format!("cs(Q) = {got}, expected −1/{n}"), s.vertices[q].rep.name.clone());
    }
    if g == GroupId::BinaryTetrahedral {
        let vals: Vec<String> = (0..s.len()).map(|v| chern_simons_at(&s, v, Orientation::Std).map(|c| c.to_string())).collect::<Result<_, _>>()?;
        if vals != ["0", "23/24", "1/3"] {
            return fail(format!("T* values {vals:?}"), "T*");
        }
    }
    for a in 0..s.len() {
        for b in 0..s.len() {
            let walked = cs_along_path(&s, a, b)?;
            let direct = cs_direct(g, &s.vertices[b].rep.character, &s.vertices[a].rep.character)?;
            if walked != direct {
                return fail(format!("path sum {walked} vs direct {direct}"), format!("{}→{}", s.vertices[a].rep.name, s.vertices[b].rep.name));
            }
        }
    }
    pass(format!("cs(Q) = −1/{n}; path sums agree with direct solves on {} pairs", s.len() * s.len()))
}

fn fixture(path: &str) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("fixture {path}: {e}")))?;
    let (g, diff) = check_fixture(&text)?;
    match diff.first() {
        None => pass(format!("{path} matches S_{g}")),
        Some(first) => fail(format!("{path}: {} mismatches", diff.len()), first.clone()),
    }
}

fn run_job(g: GroupId, job: &Job, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match job {
        Job::Tables => tables(g),
        Job::SGraph => sgraph(g),
        Job::Figure => figure(g),
        Job::Oracle => with_field!(cfg.coeff, F => oracle::<F>(g)),
        Job::Accounting => with_field!(cfg.coeff, F => accounting::<F>(g)),
        Job::ClosedForm(o, f) => with_field!(cfg.coeff, F => closed_form::<F>(g, *o, *f, cfg)),
        Job::Duality => with_field!(cfg.coeff, F => duality::<F>(g, cfg)),
        Job::Norm => with_field!(cfg.coeff, F => norm::<F>(g, cfg)),
        Job::ChernSimons => chern_simons(g),
        Job::Fixture(path) => fixture(path),
    }
}

/// Runs every check for every configured group on `cfg.jobs` workers.
pub fn run_verify(cfg: &RunConfig) -> Result<VerifyReport, CliError> {
    let start = Instant::now();
    let mut work: Vec<(usize, Option<GroupId>, Job)> = Vec::new();
    for &g in &cfg.groups {
        for job in jobs_for(g, cfg) {
            work.push((work.len(), Some(g), job));
        }
    }
    for path in &cfg.fixtures {
        work.push((work.len(), None, Job::Fixture(path.clone())));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().map_err(|e| CliError::Usage(e.to_string()))?;
    let mut checks: Vec<(usize, Check)> = pool.install(|| {
        work.par_iter()
            .map(|(i, g, job)| {
                let t = Instant::now();
                let outcome = match g {
                    Some(g) => run_job(*g, job, cfg),
                    None => run_job(GroupId::Cyclic(1), job, cfg),
                };
                let (ok, detail, location) = outcome.unwrap_or_else(|e| (false, e.to_string(), Some("error".into())));
                let check = Check {
                    check: job_name(job),
                    group: g.map_or("-".into(), |g| g.to_string()),
                    status: if ok { Status::Pass } else { Status::Fail },
                    location,
                    detail,
                    seconds: cfg.timings.then(|| t.elapsed().as_secs_f64()),
                };
                (*i, check)
            })
            .collect()
    });
    checks.sort_by_key(|(i, _)| *i);
    let checks: Vec<Check> = checks.into_iter().map(|(_, c)| c).collect();
    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.into(),
        config: cfg.clone(),
        passed: checks.len() - failed,
        failed,
        pass: failed == 0,
        checks,
        wall_time_ms: cfg.timings.then(|| start.elapsed().as_millis() as u64),
    })
}
