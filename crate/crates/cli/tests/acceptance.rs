//! One PASS/FAIL line per acceptance criterion, with the tolerances and time
//! limits pinned below. Run with `cargo test -p cli --test acceptance -- --nocapture`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cli::commands::setting_report;
use cli::RunConfig;
use cs::{canonical_vertex, chern_simons_at, cs_along_path, cs_direct, CsValue};
use donaldson::{build_model, materialize_levels, DonaldsonModel, Orientation};
use equivariant::{bar_oracle, functor_model, orbit_complex, orbit_homology, Flavor};
use exactmath::{Field, F3, F5, Q};
use floer::{einfty_generators, norm_vanishing_and_splitting, run_to_einfty, truncated_ss, Differential, Subspace};
use grouprep::{GroupId, QuatKind};
use mckay::{compare_with_reference, reference_graph, s_graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Seed for the randomized criteria (7 and 9).
const SEED: u64 = 0x5eed_f10e;

const SETTINGS: [(Orientation, Flavor); 5] = [
    (Orientation::Bar, Flavor::Plus),
    (Orientation::Bar, Flavor::Minus),
    (Orientation::Bar, Flavor::Infinity),
    (Orientation::Std, Flavor::Minus),
    (Orientation::Std, Flavor::Plus),
];

fn groups() -> Vec<GroupId> {
    GroupId::sweep(12)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bar(g: GroupId) -> DonaldsonModel {
    build_model(g, Orientation::Bar).unwrap()
}

fn sgraphs() -> Outcome {
    let gs = groups();
    for &g in &gs {
        let s = s_graph(g).map_err(|e| e.to_string())?;
        let diff = compare_with_reference(&s, &reference_graph(g));
        ensure(diff.is_empty(), || format!("{g}: {}", diff[0]))?;
    }
    Ok(format!("{} groups: vertices, adjacency, labels, gradings equal", gs.len()))
}

fn figures() -> Outcome {
    // (s, t) ranks at t ∈ {0, 2, 3} for s = 0, 4 and the arrow out of 8, 4.
    let table: [(GroupId, [(usize, usize, usize); 2], [&[i64]; 2]); 3] = [
        (GroupId::BinaryTetrahedral, [(2, 1, 0), (1, 0, 1)], [&[1, 3], &[]]),
        (GroupId::BinaryOctahedral, [(2, 0, 1), (2, 0, 1)], [&[1, 3], &[1, 3]]),
        (GroupId::BinaryIcosahedral, [(2, 0, 1), (1, 0, 1)], [&[1, 3], &[4]]),
    ];
    for (g, ranks, arrows) in table {
        let m = bar(g);
        for (s, want) in [0i64, 4].into_iter().zip(ranks) {
            let got = (m.at(s, 0).len(), m.at(s, 2).len(), m.at(s, 3).len());
            ensure(got == want, || format!("{g} column {s}: ranks {got:?}, expected {want:?}"))?;
        }
        for (s, want) in [8i64, 4].into_iter().zip(arrows) {
            let a = m.arrows_from(s);
            let mut c: Vec<i64> = a.iter().flat_map(|a| a.coeffs.iter().copied()).filter(|&x| x != 0).collect();
            c.sort_unstable();
            ensure(a.len() == 1 && c == want, || format!("{g} arrow from {s}: {:?}", a.iter().map(|a| a.label()).collect::<Vec<_>>()))?;
        }
    }
    Ok("T*, O*, I* ranks and arrows (1,3), (0), (1,3), (1,3), (1,3), (4)".into())
}

fn orbits() -> Outcome {
    let kinds = [QuatKind::FullyReducible, QuatKind::Reducible, QuatKind::Irreducible];
    for kind in kinds {
        for flavor in Flavor::ALL {
            let direct = functor_model(&orbit_complex(kind), flavor, -24, 24).complex.homology::<Q>().invariants(-24, 24, 6);
            let closed = orbit_homology(kind, flavor).materialize(-1, 0, -24, 24).homology::<Q>().invariants(-24, 24, 6);
            ensure(direct == closed, || format!("{kind:?} {flavor}: closed form differs from the model"))?;
        }
    }
    // Supports pinned by hand.
    let support = |kind, flavor, lo, hi| -> Vec<i64> {
        let h = functor_model(&orbit_complex(kind), flavor, lo, hi).complex.homology::<Q>();
        (lo..=hi).filter(|&n| h.dim(n) > 0).collect()
    };
    ensure(support(QuatKind::Irreducible, Flavor::Plus, -20, 20) == [0], || "free orbit H⁺".into())?;
    ensure(support(QuatKind::Irreducible, Flavor::Minus, -20, 20) == [3], || "free orbit H⁻".into())?;
    ensure(support(QuatKind::Irreducible, Flavor::Infinity, -20, 20).is_empty(), || "free orbit H^∞".into())?;
    ensure(support(QuatKind::FullyReducible, Flavor::Plus, -8, 16) == [0, 4, 8, 12, 16], || "point orbit H⁺".into())?;
    ensure(support(QuatKind::Reducible, Flavor::Minus, -6, 6) == [-6, -4, -2, 0, 2], || "circle orbit H⁻".into())?;
    Ok("3 orbit types × 3 flavors, dims and U^k ranks (k ≤ 6) on degrees [-24, 24]".into())
}

fn oracle() -> Outcome {
    let gs = GroupId::sweep(6);
    let mut n = 0;
    for &g in &gs {
        for o in [Orientation::Bar, Orientation::Std] {
            let w = materialize_levels(&build_model(g, o).unwrap(), -1, 23);
            for flavor in [Flavor::Plus, Flavor::Minus] {
                let r = bar_oracle::<Q>(&w, flavor, 0, 23).map_err(|e| format!("{g} {o} {flavor}: {e}"))?;
                ensure(r.model_dims == r.oracle_dims, || format!("{g} {o} {flavor}: homology dims differ"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} bar complexes ({} groups, levels (-1, 23]) chain-isomorphic to the models", gs.len()))
}

fn column<F: Field>(d: &[Differential<F>], page: u32, source: &str) -> Option<BTreeMap<String, F>> {
    d.iter().filter(|d| d.page == page).find_map(|d| {
        let c = d.source_gens.iter().position(|g| g == source)?;
        Some(d.target_gens.iter().enumerate().filter(|(r, _)| !d.projected[*r][c].is_zero()).map(|(r, t)| (t.clone(), d.projected[r][c].clone())).collect())
    })
}

fn one(target: &str, c: i64) -> BTreeMap<String, Q> {
    BTreeMap::from([(target.to_string(), Q::from_i64(c))])
}

fn spectral() -> Outcome {
    let minus = |g| run_to_einfty::<Q>(&bar(g), Flavor::Minus).map_err(|e| format!("{g}: {e}"));

    let (i, _) = minus(GroupId::BinaryIcosahedral)?;
    ensure(column(&i.ledger, 4, "U_θ^0") == Some(one("h_α", 1)), || "I*: d⁴(U_θ⁰) ≠ h_α".into())?;
    ensure(column(&i.ledger, 8, "U_θ^1") == Some(one("h_β", 4)), || "I*: d⁸(U_θ¹) ≠ 4h_β".into())?;

    let (o, _) = minus(GroupId::BinaryOctahedral)?;
    let d4: Vec<_> = o.ledger.iter().filter(|d| d.page == 4).collect();
    ensure(d4.len() == 2 && d4.iter().all(|d| (d.rank, d.source_gens.len(), d.target_gens.len()) == (1, 1, 1)), || "O*: d⁴ are not both isomorphisms".into())?;

    let (t, _) = minus(GroupId::BinaryTetrahedral)?;
    let gens: Vec<String> = einfty_generators(&t).map_err(|e| e.to_string())?.into_iter().map(|g| g.name).collect();
    ensure(gens.iter().any(|g| g == "3U_θ^0−Z_λ^1"), || format!("T*: E^∞ generators {gens:?}"))?;
    ensure(column(&t.ledger, 4, "Z_λ^1") == Some(one("h_α", 3)), || "T*: d⁴(Z_λ¹) ≠ 3h_α".into())?;

    for m in 4..=12u32 {
        let g = GroupId::BinaryDihedral(m);
        let (p, _) = minus(g)?;
        let n = m / 4;
        let last = if m % 4 < 2 { n } else { n + 1 };
        let eta = if m % 2 == 0 { "η1" } else { "η" };
        for r in 1..=last {
            let want = one(&format!("h_α{r}"), 1 << (r - 1));
            for src in [format!("U_θ^{}", r - 1), format!("U_{eta}^{}", r - 1)] {
                ensure(column(&p.ledger, 4 * r, &src).as_ref() == Some(&want), || format!("{g}: d^{} on {src}", 4 * r))?;
            }
        }
        if m % 4 == 0 {
            let s = &bar(g).sgraph;
            let (theta, eta1) = (s.index_of("θ").unwrap(), s.index_of("η1").unwrap());
            for r in 1..=n as i64 {
                let e = p.entry(0, -4 * (r - 1)).ok_or(format!("{g}: no entry at (0, {})", -4 * (r - 1)))?;
                let mut k = vec![Q::from_i64(0); e.gens.len()];
                k[e.position(theta, "U", r - 1).unwrap()] = Q::from_i64(1);
                k[e.position(eta1, "U", r - 1).unwrap()] = Q::from_i64(-1);
                ensure(e.cycles.equals(&Subspace::spanned(e.gens.len(), &[k])), || format!("{g}: kernel of d^{} is not U_θ^{1} − U_η1^{1}", 4 * r, r - 1))?;
            }
        }
    }
    Ok("I* d⁴ = 1, d⁸ = 4; O* d⁴ isomorphisms; T* kernel 3U_θ⁰ − Z_λ¹; D*4..D*12 ladders 2^{r−1} and kernels U_θ − U_η1".into())
}

fn assembled() -> Outcome {
    let cfg = RunConfig { degrees: (0, 47), kmax: 6, ..RunConfig::default() };
    let mut n = 0;
    for g in groups() {
        for (o, f) in SETTINGS {
            for field in ["q", "fp:3", "fp:5"] {
                let r = match field {
                    "q" => setting_report::<Q>(g, o, f, &cfg),
                    "fp:3" => setting_report::<F3>(g, o, f, &cfg),
                    _ => setting_report::<F5>(g, o, f, &cfg),
                }
                .map_err(|e| format!("{g} {o} {f} {field}: {e}"))?;
                ensure(r.direct_vs_assembled.pass, || format!("{g} {o} {f} {field}: {}", r.direct_vs_assembled.mismatches[0]))?;
                if let Some(c) = &r.closed_form_vs_assembled {
                    ensure(c.pass, || format!("{g} {o} {f} {field}: closed form: {}", c.mismatches[0]))?;
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} (group, setting, field) comparisons of dims and rank U^k (k ≤ 6), degrees [0, 47]"))
}

fn accounting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let gs = groups();
    for trial in 0..50 {
        let g = gs[rng.gen_range(0..gs.len())];
        let o = if rng.gen_bool(0.5) { Orientation::Bar } else { Orientation::Std };
        let q = rng.gen_range(-16..8);
        let p = q + rng.gen_range(4..28);
        let flavor = Flavor::ALL[rng.gen_range(0..3)];
        let w = materialize_levels(&build_model(g, o).unwrap(), q, p);
        let ss = truncated_ss::<Q>(&w, flavor, q - 4, p + 8);
        if let Some((deg, e, h)) = ss.defects().first() {
            return Err(format!("trial {trial}: {g} {o} {flavor} levels ({q}, {p}] degree {deg}: Σ E^∞ = {e}, dim H = {h}"));
        }
    }
    Ok("50 seeded windows: Σ dim E^∞ = dim H in every degree".into())
}

fn norm() -> Outcome {
    let gs = groups();
    for &g in &gs {
        norm_vanishing_and_splitting::<Q>(g, 0, 23).map_err(|e| format!("{g}: {e}"))?;
    }
    Ok(format!("{} groups: ν = 0, dim H^∞ = dim H⁻ + dim H⁺[4], U bijective on H^∞ interiors", gs.len()))
}

fn chern_simons() -> Outcome {
    for g in groups() {
        let s = s_graph(g).map_err(|e| e.to_string())?;
        let v = canonical_vertex(&s).ok_or(format!("{g}: no vertex carries Q"))?;
        let got = chern_simons_at(&s, v, Orientation::Std).map_err(|e| e.to_string())?;
        ensure(got == CsValue::new(-1, g.order() as i64), || format!("{g}: cs(Q) = {got}"))?;
    }
    let t = s_graph(GroupId::BinaryTetrahedral).unwrap();
    let vals: Vec<CsValue> = (0..t.len()).map(|v| chern_simons_at(&t, v, Orientation::Std).unwrap()).collect();
    let want = [CsValue::new(0, 1), CsValue::new(-1, 24), CsValue::new(1, 3)];
    ensure(vals == want, || format!("T*: {vals:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let gs = groups();
    for _ in 0..20 {
        let g = gs[rng.gen_range(0..gs.len())];
        let s = s_graph(g).unwrap();
        let (a, b) = (rng.gen_range(0..s.len()), rng.gen_range(0..s.len()));
        let walked = cs_along_path(&s, a, b).map_err(|e| e.to_string())?;
        let direct = cs_direct(g, &s.vertices[b].rep.character, &s.vertices[a].rep.character).map_err(|e| e.to_string())?;
        ensure(walked == direct, || format!("{g}: path sum {walked} vs direct {direct}"))?;
    }
    Ok("cs(Q) = −1/|Γ| for 25 groups; T* {0, −1/24, 1/3}; 20 seeded pairs path-independent".into())
}

fn scale_note() -> Outcome {
    // Every comparison above runs on bounded windows; this line records that
    // the windowed substitute is in force rather than testing anything new.
    Ok("answers are compared on bounded filtration windows, never as infinite-rank objects".into())
}

#[test]
fn acceptance() {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        (1, "S_Γ reproduction", 10, sgraphs),
        (2, "Donaldson model figures", 1, figures),
        (3, "orbit homology", 1, orbits),
        (4, "bar-construction oracle", 60, oracle),
        (5, "spectral sequence pages", 30, spectral),
        (6, "assembled answers over Q, F3, F5", 180, assembled),
        (7, "convergence accounting", 60, accounting),
        (8, "triangle and norm", 60, norm),
        (9, "Chern–Simons", 5, chern_simons),
        (10, "windowed scale", 1, scale_note),
    ];
    let mut failed = Vec::new();
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > Duration::from_secs(limit) => Err(format!("over the {limit} s limit")),
            o => o,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(e) => ("FAIL", e.as_str()),
        };
        println!("criterion {n:>2} {status} {name} [{:.2} s / {limit} s] {detail}", took.as_secs_f64());
        if outcome.is_err() {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
