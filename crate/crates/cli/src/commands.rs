//! One function per subcommand; each returns every output format.

use std::fmt::Write as _;

use cs::{flat_connections, group_cohomology, AbelianGroup};
use donaldson::{build_model, materialize_levels, materialize_window, DonaldsonModel, Orientation};
use equivariant::Flavor;
use exactmath::Field;
use floer::{
    assemble, compare, default_margin, direct_invariants, run_to_einfty, theorem, truncated_ss, CompareReport, FloerError, Prediction,
    Window,
};
use grouprep::{character_table, quaternionic_reps, GroupId, QuatKind};
use mckay::{compare_with_reference, mckay_graph, parse_dot, s_graph, ReferenceGraph};
use serde_json::{json, Value};

use crate::{with_field, CliError, Output, RunConfig, SCHEMA_VERSION};

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(out), Value::Object(body)) = (&mut v, body) {
        out.extend(body);
    }
    v
}

pub fn flavor_word(f: Flavor) -> &'static str {
    match f {
        Flavor::Plus => "plus",
        Flavor::Minus => "minus",
        Flavor::Infinity => "infinity",
    }
}

/// Provenance tag of the closed-form answer for one setting.
pub fn closed_form_tag(o: Orientation, f: Flavor) -> String {
    format!("closed_form.{}.{o}", flavor_word(f))
}

/// The configured window, or degrees with the default level margin.
pub fn window_for(cfg: &RunConfig, m: &DonaldsonModel) -> Window {
    let (lo, hi) = cfg.degrees;
    match cfg.window {
        Some((q, p)) => Window { q, p, lo, hi },
        None => Window::around(lo, hi, default_margin(m)),
    }
}

pub fn groups(cfg: &RunConfig) -> Result<Output, CliError> {
    let mut text = format!("{:<6} {:>5}  {:<10} {:<6} {:>6}  {}\n", "group", "order", "Γ^ab", "McKay", "irreps", "S_Γ vertices (irr/red/f.red)");
    let mut rows = Vec::new();
    for &g in &cfg.groups {
        let m = mckay_graph(g)?;
        let s = s_graph(g)?;
        let count = |k: QuatKind| s.vertices.iter().filter(|v| v.rep.kind == k).count();
        let (irr, red, fred) = (count(QuatKind::Irreducible), count(QuatKind::Reducible), count(QuatKind::FullyReducible));
        let ab = AbelianGroup { free_rank: 0, torsion: g.abelianization() }.to_string();
        let _ = writeln!(text, "{:<6} {:>5}  {:<10} {:<6} {:>6}  {irr}/{red}/{fred}", g.to_string(), g.order(), ab, m.extended_name(), m.len());
        rows.push(json!({
            "group": g.to_string(),
            "order": g.order(),
            "abelianization": ab,
            "mckay_type": m.extended_name(),
            "irreps": m.len(),
            "vertices": { "irr": irr, "red": red, "fred": fred },
        }));
    }
    Ok(Output { text, json: envelope("groups", json!({ "groups": rows })), dot: None, pass: true })
}

pub fn repr(g: GroupId) -> Result<Output, CliError> {
    let t = character_table(g);
    let classes: Vec<Value> =
        t.classes.iter().map(|c| json!({ "label": c.label, "size": c.size, "representative": c.representative })).collect();
    let irreps: Vec<Value> = t
        .irreps
        .iter()
        .map(|r| json!({ "name": r.name, "dim": r.dim, "type": r.ty.symbol(), "values": r.values.iter().map(|x| x.to_string()).collect::<Vec<_>>() }))
        .collect();
    let quat: Vec<Value> = quaternionic_reps(g)
        .iter()
        .map(|q| json!({ "name": q.name, "kind": q.kind.short(), "constituents": q.constituents.iter().map(|&i| t.irreps[i].name.clone()).collect::<Vec<_>>() }))
        .collect();

    let cells: Vec<Vec<String>> = std::iter::once(
        ["".to_string(), "".to_string()].into_iter().chain(t.classes.iter().map(|c| format!("{}({})", c.label, c.size))).collect(),
    )
    .chain(t.irreps.iter().map(|r| [r.name.clone(), r.ty.symbol().to_string()].into_iter().chain(r.values.iter().map(|x| x.to_string())).collect()))
    .collect();
    let widths: Vec<usize> = (0..cells[0].len()).map(|c| cells.iter().map(|row| row[c].chars().count()).max().unwrap_or(0)).collect();
    let mut text = format!("character table of {g} (order {})\n", g.order());
    for row in &cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(x, w)| format!("{x:>w$}")).collect();
        let _ = writeln!(text, "{}", line.join("  ").trim_end());
    }
    let _ = writeln!(text, "quaternionic 1-dimensional representations:");
    for q in quaternionic_reps(g) {
        let names: Vec<&str> = q.constituents.iter().map(|&i| t.irreps[i].name.as_str()).collect();
        let _ = writeln!(text, "  {:<4} {:<6} {}", q.name, q.kind.short(), names.join(" ⊕ "));
    }
    let json = envelope("repr", json!({ "group": g.to_string(), "classes": classes, "irreps": irreps, "q": t.q.0, "quaternionic": quat }));
    Ok(Output { text, json, dot: None, pass: true })
}

pub fn mckay(g: GroupId) -> Result<Output, CliError> {
    let m = mckay_graph(g)?;
    let mut text = format!("McKay graph of {g}: {}\n", m.extended_name());
    for i in 0..m.len() {
        let nbrs: Vec<String> = m
            .neighbors(i)
            .into_iter()
            .map(|j| if m.adjacency[i][j] > 1 { format!("{}×{}", m.adjacency[i][j], m.names[j]) } else { m.names[j].clone() })
            .collect();
        let _ = writeln!(text, "  {:<6} dim {}  — {}", m.names[i], m.dims[i], nbrs.join(", "));
    }
    let json = envelope(
        "mckay",
        json!({ "group": g.to_string(), "type": m.extended_name(), "names": m.names, "dims": m.dims, "adjacency": m.adjacency }),
    );
    Ok(Output { text, json, dot: Some(m.to_dot()), pass: true })
}

/// The group named in a DOT header `graph "S_<group>"`.
fn dot_group(text: &str) -> Option<GroupId> {
    let start = text.find("\"S_")? + 3;
    let end = start + text[start..].find('"')?;
    text[start..end].parse().ok()
}

/// A DOT fixture read back as a reference graph.
pub fn fixture_reference(text: &str) -> Result<ReferenceGraph, CliError> {
    let group = dot_group(text).ok_or_else(|| CliError::Usage("fixture: missing graph \"S_<group>\" header".into()))?;
    let d = parse_dot(text)?;
    let name = |k: usize| d.vertices.get(k).map(|v| v.0.clone()).ok_or_else(|| CliError::Usage(format!("fixture: no vertex v{k}")));
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for &(a, b, fwd, back) in &d.edges {
        let (x, y) = (name(a)?, name(b)?);
        if fwd != 0 {
            labels.push((x.clone(), y.clone(), fwd));
        }
        if back != 0 {
            labels.push((y.clone(), x.clone(), back));
        }
        edges.push((x, y));
    }
    Ok(ReferenceGraph { group, vertices: d.vertices.iter().map(|v| (v.0.clone(), v.2)).collect(), edges, labels })
}

/// Mismatches between a DOT fixture and the computed S_Γ.
pub fn check_fixture(text: &str) -> Result<(GroupId, Vec<String>), CliError> {
    let r = fixture_reference(text)?;
    let s = s_graph(r.group)?;
    Ok((r.group, compare_with_reference(&s, &r)))
}

pub fn sgraph(g: GroupId, check: Option<&str>) -> Result<Output, CliError> {
    let s = s_graph(g)?;
    let mut text = format!("S_{g}\n");
    let vertices: Vec<Value> =
        s.vertices.iter().map(|v| json!({ "name": v.rep.name, "kind": v.rep.kind.short(), "j": v.j, "i": v.i })).collect();
    for v in &s.vertices {
        let _ = writeln!(text, "  {:<4} {:<6} j={} i={}", v.rep.name, v.rep.kind.short(), v.j, v.i);
    }
    let mut edges = Vec::new();
    for &(a, b) in &s.edges {
        let label = s.edge_text(a, b);
        let _ = writeln!(text, "  {} — {}  {}", s.vertices[a].rep.name, s.vertices[b].rep.name, label);
        edges.push(json!({
            "a": s.vertices[a].rep.name,
            "b": s.vertices[b].rep.name,
            "label": label,
            "n_ab": s.label(a, b),
            "n_ba": s.label(b, a),
        }));
    }
    let mut body = json!({ "group": g.to_string(), "vertices": vertices, "edges": edges });
    let mut pass = true;
    if let Some(fixture) = check {
        let (fg, diff) = check_fixture(fixture)?;
        if fg != g {
            return Err(CliError::Usage(format!("fixture describes {fg}, not {g}")));
        }
        pass = diff.is_empty();
        let _ = writeln!(text, "fixture: {}", if pass { "PASS".to_string() } else { format!("FAIL: {}", diff[0]) });
        body["fixture"] = json!({ "check": "reference.sgraph", "pass": pass, "mismatches": diff });
    }
    Ok(Output { text, json: envelope("sgraph", body), dot: Some(s.to_dot()), pass })
}

pub fn dci(g: GroupId, cfg: &RunConfig) -> Result<Output, CliError> {
    let o = cfg.orientation.unwrap_or(Orientation::Bar);
    let m = build_model(g, o)?;
    let mut text = format!("DCI({}{g}) bidegrees (s mod 8 across, t down)\n", if o == Orientation::Bar { "Ȳ_" } else { "Y_" });
    let cell = |s: i64, t: u8| m.at(s, t).join(" ");
    let width = (0..8).flat_map(|s| (0..4).map(move |t| (s, t))).map(|(s, t)| cell(s, t).chars().count()).max().unwrap_or(1).max(1);
    let _ = writeln!(text, "{:>4} {}", "t\\s", (0..8).map(|s| format!("{s:^width$}")).collect::<Vec<_>>().join(" │ "));
    let mut figure = Vec::new();
    for t in (0..4u8).rev() {
        let row: Vec<String> = (0..8).map(|s| format!("{:^width$}", cell(s, t))).collect();
        let _ = writeln!(text, "{t:>4} {}", row.join(" │ "));
        for s in 0..8 {
            let names = m.at(s, t);
            if !names.is_empty() {
                figure.push(json!({ "s": s, "t": t, "generators": names }));
            }
        }
    }
    let mut arrows = Vec::new();
    for s in 0..8 {
        for a in m.arrows_from(s) {
            let _ = writeln!(text, "  ∂ from s={s} dropping {}: {} → {}  {}", a.drop, a.sources.join(","), a.targets.join(","), a.label());
            arrows.push(json!({ "from": s, "drop": a.drop, "sources": a.sources, "targets": a.targets, "coeffs": a.coeffs, "label": a.label() }));
        }
    }
    let mut body = json!({ "group": g.to_string(), "orientation": o.to_string(), "bidegrees": figure, "arrows": arrows });
    if let Some((q, p)) = cfg.window {
        let (lo, hi) = cfg.degrees;
        let w = materialize_window(&m, q, p, lo, hi)?;
        let gens: Vec<Value> = (lo..=hi)
            .map(|n| {
                let names: Vec<String> = w.basis.get(&n).map_or(Vec::new(), |b| b.iter().map(|e| format!("{}[{}]", e.name, e.level)).collect());
                json!({ "degree": n, "generators": names })
            })
            .collect();
        let _ = writeln!(text, "window levels ({q}, {p}], degrees [{lo}, {hi}]: {} generators", w.total_dim());
        body["window"] = json!({ "levels": [q, p], "degrees": [lo, hi], "cells": gens });
    }
    Ok(Output { text, json: envelope("dci", body), dot: None, pass: true })
}

/// The assembled answer for one setting; I⁺(Y_Γ) is the dual of the
/// assembled I⁻(Ȳ_Γ).
pub fn assembled<F: Field>(g: GroupId, o: Orientation, flavor: Flavor) -> Result<(Prediction, u32), FloerError> {
    if (o, flavor) == (Orientation::Std, Flavor::Plus) {
        let bar = build_model(g, Orientation::Bar)?;
        let (page, deg) = run_to_einfty::<F>(&bar, Flavor::Minus)?;
        return Ok((Prediction::Dual(assemble(&page, &bar)?), deg));
    }
    let m = build_model(g, o)?;
    let (page, deg) = run_to_einfty::<F>(&m, flavor)?;
    Ok((Prediction::Module(assemble(&page, &m)?), deg))
}

/// One setting compared three ways on a window: direct homology against
/// the assembled answer, and the encoded closed form against both.
#[derive(Clone, Debug)]
pub struct SettingReport {
    pub orientation: Orientation,
    pub flavor: Flavor,
    pub window: Window,
    pub assembled: String,
    pub degeneration_page: u32,
    pub closed_form: Option<String>,
    pub dims: std::collections::BTreeMap<i64, usize>,
    pub direct_vs_assembled: CompareReport,
    pub closed_form_vs_assembled: Option<CompareReport>,
}

impl SettingReport {
    pub fn pass(&self) -> bool {
        self.direct_vs_assembled.pass && self.closed_form_vs_assembled.as_ref().is_none_or(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let mut checks = vec![json!({
            "check": format!("direct_homology.{}.{}", flavor_word(self.flavor), self.orientation),
            "pass": self.direct_vs_assembled.pass,
            "mismatches": self.direct_vs_assembled.mismatches,
        })];
        if let Some(c) = &self.closed_form_vs_assembled {
            checks.push(json!({ "check": closed_form_tag(self.orientation, self.flavor), "pass": c.pass, "mismatches": c.mismatches }));
        }
        json!({
            "orientation": self.orientation.to_string(),
            "flavor": flavor_word(self.flavor),
            "window": { "levels": [self.window.q, self.window.p], "degrees": [self.window.lo, self.window.hi] },
            "assembled": self.assembled,
            "closed_form": self.closed_form,
            "degeneration_page": self.degeneration_page,
            "dims": self.dims.iter().map(|(n, d)| (n.to_string(), json!(d))).collect::<serde_json::Map<_, _>>(),
            "checks": checks,
        })
    }
}

pub fn setting_report<F: Field>(g: GroupId, o: Orientation, flavor: Flavor, cfg: &RunConfig) -> Result<SettingReport, CliError> {
    let m = build_model(g, o)?;
    let w = window_for(cfg, &m);
    let (pred, deg) = assembled::<F>(g, o, flavor)?;
    let inv = pred.invariants::<F>(&w, cfg.kmax);
    let direct = direct_invariants::<F>(&m, flavor, &w, cfg.kmax);
    let safe = |n| w.contains(n);
    let (closed_form, closed_cmp) = match theorem(&m.sgraph, o, flavor) {
        Ok(th) => {
            let c = compare(&th.invariants::<F>(&w, cfg.kmax), &inv, safe);
            (Some(th.describe()), Some(c))
        }
        Err(FloerError::Unsupported(_)) => (None, None),
        Err(e) => return Err(e.into()),
    };
    Ok(SettingReport {
        orientation: o,
        flavor,
        window: w,
        assembled: pred.describe(),
        degeneration_page: deg,
        closed_form,
        dims: direct.dims.clone(),
        direct_vs_assembled: compare(&direct, &inv, safe),
        closed_form_vs_assembled: closed_cmp,
    })
}

pub fn floer(g: GroupId, cfg: &RunConfig) -> Result<Output, CliError> {
    let mut text = String::new();
    let mut settings = Vec::new();
    let mut pass = true;
    for o in cfg.orientations() {
        for &flavor in &cfg.flavors {
            let r = with_field!(cfg.coeff, F => setting_report::<F>(g, o, flavor, cfg))?;
            pass &= r.pass();
            let _ = writeln!(text, "I^{}({}{g}) over {}:", flavor, if o == Orientation::Bar { "Ȳ_" } else { "Y_" }, cfg.coeff);
            let _ = writeln!(text, "  assembled   {}", r.assembled);
            if let Some(c) = &r.closed_form {
                let _ = writeln!(text, "  closed form {c}");
            }
            let _ = writeln!(text, "  E^∞ at page {}", r.degeneration_page);
            let verdict = |c: &CompareReport| if c.pass { "PASS".to_string() } else { format!("FAIL ({})", c.mismatches[0]) };
            let _ = writeln!(
                text,
                "  window levels ({}, {}], degrees [{}, {}]: direct {}{}",
                r.window.q,
                r.window.p,
                r.window.lo,
                r.window.hi,
                verdict(&r.direct_vs_assembled),
                r.closed_form_vs_assembled.as_ref().map_or(String::new(), |c| format!(", closed form {}", verdict(c)))
            );
            settings.push(r.to_json());
        }
    }
    let json = envelope("floer", json!({ "group": g.to_string(), "coeff": cfg.coeff.to_string(), "settings": settings }));
    Ok(Output { text, json, dot: None, pass })
}

fn raw_setting<F: Field>(g: GroupId, o: Orientation, flavor: Flavor, cfg: &RunConfig, text: &mut String) -> Result<Value, CliError> {
    let m = build_model(g, o)?;
    let _ = writeln!(text, "{}{g}, flavor {flavor}:", if o == Orientation::Bar { "Ȳ_" } else { "Y_" });
    let periodic = match run_to_einfty::<F>(&m, flavor) {
        Ok((page, deg)) => {
            let _ = writeln!(text, "  E^∞ = E^{deg}");
            for line in page.table() {
                let _ = writeln!(text, "    {line}");
            }
            let ledger: Vec<Value> = page
                .ledger
                .iter()
                .filter(|d| d.rank > 0)
                .map(|d| {
                    let _ = writeln!(text, "  d^{} {:?} → {:?}: rank {}", d.page, d.source, d.target, d.rank);
                    json!({
                        "page": d.page,
                        "source": [d.source.0, d.source.1],
                        "target": [d.target.0, d.target.1],
                        "source_gens": d.source_gens,
                        "target_gens": d.target_gens,
                        "matrix": d.projected.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "rank": d.rank,
                    })
                })
                .collect();
            json!({ "degeneration_page": deg, "einfty": page.table(), "differentials": ledger })
        }
        Err(FloerError::Unsupported(why)) => {
            let _ = writeln!(text, "  periodic sequence: {why}");
            Value::Null
        }
        Err(e) => return Err(e.into()),
    };
    let w = window_for(cfg, &m);
    let n = materialize_levels(&m, w.q, w.p);
    let ss = truncated_ss::<F>(&n, flavor, w.lo, w.hi);
    let _ = writeln!(
        text,
        "  truncated on levels ({}, {}], degrees [{}, {}]: nonzero d^r for r ∈ {:?}; accounting {}",
        w.q,
        w.p,
        w.lo,
        w.hi,
        ss.nonzero_differentials,
        if ss.defects().is_empty() { "exact" } else { "DEFECTIVE" }
    );
    Ok(json!({
        "orientation": o.to_string(),
        "flavor": flavor_word(flavor),
        "periodic": periodic,
        "truncated": {
            "levels": [w.q, w.p],
            "degrees": [w.lo, w.hi],
            "nonzero_differentials": ss.nonzero_differentials,
            "einfty": ss.einfty.iter().map(|(&(p, n), &d)| json!([p, n, d])).collect::<Vec<_>>(),
            "homology": ss.homology.iter().map(|(n, d)| (n.to_string(), json!(d))).collect::<serde_json::Map<_, _>>(),
            "defects": ss.defects(),
        },
    }))
}

pub fn floer_raw(g: GroupId, cfg: &RunConfig) -> Result<Output, CliError> {
    let mut text = String::new();
    let mut settings = Vec::new();
    for o in cfg.orientations() {
        for &flavor in &cfg.flavors {
            settings.push(with_field!(cfg.coeff, F => raw_setting::<F>(g, o, flavor, cfg, &mut text))?);
        }
    }
    let json = envelope("floer-raw", json!({ "group": g.to_string(), "coeff": cfg.coeff.to_string(), "settings": settings }));
    Ok(Output { text, json, dot: None, pass: true })
}

pub fn cs(g: GroupId, cfg: &RunConfig) -> Result<Output, CliError> {
    let o = cfg.orientation.unwrap_or(Orientation::Std);
    let flat = flat_connections(g, o)?;
    let mut text = format!("flat connections over {}{g} (cs in Q/Z, c₂ in H⁴ = Z/{})\n", if o == Orientation::Bar { "Ȳ_" } else { "Y_" }, g.order());
    for c in &flat {
        let _ = writeln!(text, "  {:<4} {:<6} cs = {:<8} c₂ = {}", c.vertex, c.kind, c.cs.to_string(), c.c2);
    }
    let coh: Vec<Value> = (0..=8).map(|i| json!({ "degree": i, "group": group_cohomology(g, i).to_string() })).collect();
    let _ = writeln!(
        text,
        "H^*({g}; Z) for * = 0..8: {}",
        (0..=8).map(|i| group_cohomology(g, i).to_string()).collect::<Vec<_>>().join(", ")
    );
    let connections: Vec<Value> = flat
        .iter()
        .map(|c| json!({ "vertex": c.vertex, "kind": c.kind, "cs": c.cs.to_string(), "c2_residue": c.c2.residue, "provenance": "cs.path_sum" }))
        .collect();
    let json = envelope("cs", json!({ "group": g.to_string(), "orientation": o.to_string(), "connections": connections, "cohomology": coh }));
    Ok(Output { text, json, dot: None, pass: true })
}
