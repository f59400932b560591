use std::collections::BTreeMap;

use donaldson::{build_model, build_model_with_labels, materialize_levels, walk_weight, DonaldsonModel, Orientation};
use equivariant::Flavor;
use exactmath::{Field, F3, F5, F7, Q};
use floer::*;
use grouprep::{GroupId, QuatKind};
use proptest::prelude::*;

fn bar(g: GroupId) -> DonaldsonModel {
    build_model(g, Orientation::Bar).unwrap()
}

fn v(m: &DonaldsonModel, name: &str) -> usize {
    m.sgraph.index_of(name).unwrap()
}

fn names<F: Field>(page: &Page<F>, s: i64, t: i64) -> Vec<String> {
    page.entry(s, t).map_or(Vec::new(), |e| e.gens.iter().map(|g| g.name.clone()).collect())
}

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

/// Column of d^{4r} for the named source generator, reduced modulo earlier
/// boundaries, as {target name: coefficient}.
fn projected_column<F: Field>(d: &[Differential<F>], source: &str) -> Option<BTreeMap<String, F>> {
    d.iter().find_map(|d| {
        let c = d.source_gens.iter().position(|g| g == source)?;
        Some(
            d.target_gens
                .iter()
                .enumerate()
                .filter(|(r, _)| !d.projected[*r][c].is_zero())
                .map(|(r, name)| (name.clone(), d.projected[r][c].clone()))
                .collect(),
        )
    })
}

/// Runs the sequence to page 4r and returns d^{4r}.
fn differential_at<F: Field>(m: &DonaldsonModel, r: u32) -> Vec<Differential<F>> {
    let (page, _) = run_to_einfty::<F>(m, Flavor::Minus).unwrap();
    page.ledger.into_iter().filter(|d| d.page == 4 * r).collect()
}

#[test]
fn e1_examples() {
    let m = bar(GroupId::BinaryIcosahedral);
    let page = e1_page::<Q>(&m, Flavor::Minus);
    assert_eq!(names(&page, 0, 0), ["U_θ^0"]);
    assert_eq!(names(&page, 0, 3), ["h_β"]);
    assert_eq!(names(&page, 0, -4), ["U_θ^1"]);
    assert_eq!(names(&page, 4, 3), ["h_α"]);
    for g in GroupId::sweep(12) {
        for o in [Orientation::Bar, Orientation::Std] {
            let m = build_model(g, o).unwrap();
            let plus = e1_page::<Q>(&m, Flavor::Plus);
            if o == Orientation::Bar {
                assert!(plus.entries.keys().all(|&(s, t)| s % 2 == 0 && t % 2 == 0), "{g}");
            }
            let inf = e1_page::<Q>(&m, Flavor::Infinity);
            for e in inf.entries.values() {
                assert!(e.gens.iter().all(|x| m.sgraph.vertices[x.vertex].rep.kind != QuatKind::Irreducible));
            }
        }
    }
}

#[test]
fn pinned_differentials() {
    let m = bar(GroupId::BinaryIcosahedral);
    let d4 = differential_at::<Q>(&m, 1);
    assert_eq!(projected_column(&d4, "U_θ^0").unwrap(), BTreeMap::from([("h_α".to_string(), q(1))]));
    let d8 = differential_at::<Q>(&m, 2);
    assert_eq!(projected_column(&d8, "U_θ^1").unwrap(), BTreeMap::from([("h_β".to_string(), q(4))]));

    let m = bar(GroupId::BinaryTetrahedral);
    let d4 = differential_at::<Q>(&m, 1);
    assert_eq!(projected_column(&d4, "Z_λ^1").unwrap(), BTreeMap::from([("h_α".to_string(), q(3))]));
    assert_eq!(projected_column(&d4, "U_θ^0").unwrap(), BTreeMap::from([("h_α".to_string(), q(1))]));
    // Over F3 the label 3 vanishes.
    let d4 = differential_at::<F3>(&m, 1);
    assert!(projected_column(&d4, "Z_λ^1").unwrap().is_empty());

    // O*: both d⁴ are isomorphisms.
    let m = bar(GroupId::BinaryOctahedral);
    let d4 = differential_at::<Q>(&m, 1);
    assert_eq!(d4.len(), 2);
    for d in &d4 {
        assert_eq!((d.rank, d.source_gens.len(), d.target_gens.len()), (1, 1, 1), "{d:?}");
    }
}

/// Independent oracle: sum over walks ρ = α₀, α₁, …, α_r of Π n_{α_{i+1}α_i}
/// with every α_i (i ≥ 1) irreducible.
fn walk_sum(m: &DonaldsonModel, from: usize, to: usize, r: u32) -> i64 {
    let s = &m.sgraph;
    let irr: Vec<usize> = (0..s.len()).filter(|&v| s.vertices[v].rep.kind == QuatKind::Irreducible).collect();
    let mut walks = vec![vec![from]];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &walks {
            for &a in irr.iter().filter(|&&a| s.adjacent(*w.last().unwrap(), a)) {
                next.push([w.clone(), vec![a]].concat());
            }
        }
        walks = next;
    }
    walks.iter().filter(|w| *w.last().unwrap() == to).map(|w| walk_weight(s, &m.labels, w)).sum()
}

#[test]
fn chain_level_differentials_follow_walks() {
    for g in GroupId::sweep(12) {
        let m = bar(g);
        let (page, _) = run_to_einfty::<Q>(&m, Flavor::Minus).unwrap();
        for d in &page.ledger {
            let r = d.page / 4;
            for (c, src) in d.source_gens.iter().enumerate() {
                let rho = v(&m, src.split('_').nth(1).unwrap().split('^').next().unwrap());
                for (row, dst) in d.target_gens.iter().enumerate() {
                    let alpha = v(&m, dst.strip_prefix("h_").unwrap());
                    assert_eq!(d.chain[row][c], q(walk_sum(&m, rho, alpha, r)), "{g} d^{} {src} → {dst}", d.page);
                }
            }
        }
    }
}

#[test]
fn degeneration_pages() {
    let page = |g| run_to_einfty::<Q>(&bar(g), Flavor::Minus).unwrap().1;
    assert_eq!(page(GroupId::BinaryIcosahedral), 9);
    assert_eq!(page(GroupId::BinaryOctahedral), 5);
    assert_eq!(page(GroupId::BinaryTetrahedral), 5);
    for m in 2..=12u32 {
        let n = m / 4;
        let expected = if m % 4 < 2 { 4 * n + 1 } else { 4 * n + 5 };
        assert_eq!(page(GroupId::BinaryDihedral(m)), expected, "D*{m}");
    }
    for g in GroupId::sweep(12) {
        for o in [Orientation::Bar, Orientation::Std] {
            let m = build_model(g, o).unwrap();
            assert_eq!(run_to_einfty::<Q>(&m, Flavor::Plus).map(|x| x.1).ok(), (o == Orientation::Bar || m.sgraph.vertices.iter().all(|v| v.rep.kind != QuatKind::Irreducible)).then_some(1), "{g} {o}");
            assert_eq!(run_to_einfty::<Q>(&m, Flavor::Infinity).unwrap().1, 1);
            if let GroupId::Cyclic(_) = g {
                assert_eq!(run_to_einfty::<Q>(&m, Flavor::Minus).unwrap().1, 1);
            }
        }
        let std = build_model(g, Orientation::Std).unwrap();
        assert_eq!(run_to_einfty::<Q>(&std, Flavor::Minus).unwrap().1, 1);
    }
    let (o, _) = run_to_einfty::<Q>(&bar(GroupId::BinaryOctahedral), Flavor::Minus).unwrap();
    assert_eq!((o.dim(0, 3), o.dim(4, 3)), (0, 0));
}

#[test]
fn wrong_flavor_is_rejected() {
    let m = bar(GroupId::BinaryIcosahedral);
    let page = e1_page::<Q>(&m, Flavor::Plus);
    assert!(matches!(d4r(&page, &m, 1), Err(FloerError::WrongFlavor(Flavor::Plus))));
}

/// The ladder d^{4r}(U_θ^{r−1}) = 2^{r−1}·h_{α_r} and the kernels
/// U_θ^{r−1} − U_{η(1)}^{r−1}.
#[test]
fn dihedral_ladders() {
    for m_ in 4..=12u32 {
        let m = bar(GroupId::BinaryDihedral(m_));
        let n = m_ / 4;
        let last = if m_ % 4 < 2 { n } else { n + 1 };
        let eta = if m_ % 2 == 0 { "η1" } else { "η" };
        let (page, _) = run_to_einfty::<Q>(&m, Flavor::Minus).unwrap();
        for r in 1..=last {
            let d: Vec<_> = page.ledger.iter().filter(|d| d.page == 4 * r).cloned().collect();
            let expected = BTreeMap::from([(format!("h_α{r}"), q(1 << (r - 1)))]);
            assert_eq!(projected_column(&d, &format!("U_θ^{}", r - 1)).unwrap(), expected, "D*{m_} r={r}");
            assert_eq!(projected_column(&d, &format!("U_{eta}^{}", r - 1)).unwrap(), expected, "D*{m_} r={r}");
        }
        if m_ % 4 == 0 {
            for r in 1..=n as i64 {
                let e = page.entry(0, -4 * (r - 1)).unwrap();
                let mut want = vec![q(0); e.gens.len()];
                want[e.position(v(&m, "θ"), "U", r - 1).unwrap()] = q(1);
                want[e.position(v(&m, "η1"), "U", r - 1).unwrap()] = q(-1);
                assert!(e.cycles.equals(&Subspace::spanned(e.gens.len(), &[want])), "D*{m_} r={r}");
            }
        }
    }
}

#[test]
fn tetrahedral_kernel() {
    let m = bar(GroupId::BinaryTetrahedral);
    let (page, _) = run_to_einfty::<Q>(&m, Flavor::Minus).unwrap();
    let e = page.entry(0, 0).unwrap();
    let mut want = vec![q(0); e.gens.len()];
    want[e.position(v(&m, "θ"), "U", 0).unwrap()] = q(3);
    want[e.position(v(&m, "λ"), "Z", 1).unwrap()] = q(-1);
    assert!(e.cycles.equals(&Subspace::spanned(e.gens.len(), &[want])));
    let gens: Vec<String> = einfty_generators(&page).unwrap().into_iter().map(|g| g.name).collect();
    assert_eq!(gens, ["Z_λ^0", "3U_θ^0−Z_λ^1", "U_θ^1"]);
}

#[test]
fn assembled_examples() {
    let m = bar(GroupId::BinaryIcosahedral);
    let (page, _) = run_to_einfty::<Q>(&m, Flavor::Minus).unwrap();
    assert_eq!(assemble(&page, &m).unwrap().to_string(), "(R[U_θ^2][-8])^{⊕,8}");

    let m = bar(GroupId::BinaryOctahedral);
    let (page, _) = run_to_einfty::<Q>(&m, Flavor::Plus).unwrap();
    let plus = assemble(&page, &m).unwrap();
    assert_eq!(plus.to_string(), "(R[V_θ] ⊕ R·g_α[4] ⊕ R·g_β ⊕ R[V_η][4])^{Π,8}");
    let fam = |name: &str| plus.families.iter().position(|f| f.name == name).unwrap();
    assert!(plus.corrections.iter().any(|c| c.from == fam("g_α") && c.to == fam("g_β") && c.coeff == 3));
    assert!(plus.is_even());
}

fn settings() -> [(Orientation, Flavor); 5] {
    [
        (Orientation::Bar, Flavor::Plus),
        (Orientation::Bar, Flavor::Minus),
        (Orientation::Bar, Flavor::Infinity),
        (Orientation::Std, Flavor::Minus),
        (Orientation::Std, Flavor::Plus),
    ]
}

fn assembled<F: Field>(g: GroupId, o: Orientation, fl: Flavor) -> Prediction {
    let b = bar(g);
    if (o, fl) == (Orientation::Std, Flavor::Plus) {
        let (p, _) = run_to_einfty::<F>(&b, Flavor::Minus).unwrap();
        return Prediction::Dual(assemble(&p, &b).unwrap());
    }
    let m = build_model(g, o).unwrap();
    let (p, _) = run_to_einfty::<F>(&m, fl).unwrap();
    Prediction::Module(assemble(&p, &m).unwrap())
}

#[test]
fn assembly_matches_theorems_and_windows() {
    for g in [GroupId::BinaryIcosahedral, GroupId::BinaryTetrahedral, GroupId::BinaryDihedral(7), GroupId::Cyclic(6)] {
        for (o, fl) in settings() {
            let m = build_model(g, o).unwrap();
            let w = Window::around(0, 23, default_margin(&bar(g)));
            let pred = assembled::<F5>(g, o, fl).invariants::<F5>(&w, 6);
            let direct = direct_invariants::<F5>(&m, fl, &w, 6);
            let th = theorem(&m.sgraph, o, fl).unwrap().invariants::<F5>(&w, 6);
            assert!(compare(&direct, &pred, |n| w.contains(n)).pass, "{g} {o} {fl}");
            assert!(compare(&th, &pred, |n| w.contains(n)).pass, "{g} {o} {fl}");
            assert!(compare(&pred, &pred, |_| true).pass);
            assert!(pred.dims.values().any(|&d| d > 0), "{g} {o} {fl}: empty window");
        }
    }
}

/// E^∞ equals the span of U^k·G from the generator tables, row by row.
fn tables_match<F: Field>() {
    for g in GroupId::sweep(12) {
        let m = bar(g);
        let table = theorem_minus_bar(&m.sgraph).unwrap();
        let (page, _) = run_to_einfty::<F>(&m, Flavor::Minus).unwrap();
        for (&(s, t), e) in &page.entries {
            if t == 3 || t < page.t_range.0 + 8 {
                continue;
            }
            let gens: Vec<(usize, i64)> = e.gens.iter().map(|x| (x.vertex, x.power)).collect();
            let span = table.span_in::<F>(&m.sgraph, s, t, &gens);
            assert!(span.equals(&e.cycles), "{g} over {}: E^∞_{{{s},{t}}}", F::label());
        }
    }
}

#[test]
fn einfty_equals_generator_tables() {
    tables_match::<Q>();
    tables_match::<F3>();
    tables_match::<F5>();
}

#[test]
fn duality_of_dimensions() {
    for g in GroupId::sweep(8) {
        let w = Window::around(0, 23, default_margin(&bar(g)));
        let std_plus = assembled::<Q>(g, Orientation::Std, Flavor::Plus).invariants::<Q>(&w, 1);
        let bar_minus = assembled::<Q>(g, Orientation::Bar, Flavor::Minus).invariants::<Q>(&w.dual(), 1);
        for (n, d) in &std_plus.dims {
            assert_eq!(*d, bar_minus.dims[&-n], "{g} degree {n}");
        }
    }
}

#[test]
fn perturbed_label_fails_with_location() {
    let m = bar(GroupId::BinaryIcosahedral);
    let (a, b) = (v(&m, "α"), v(&m, "β"));
    let mut labels = m.labels.clone();
    labels.insert((b, a), 0);
    let bad = build_model_with_labels(m.sgraph.clone(), Orientation::Bar, labels);
    let w = Window::around(0, 23, default_margin(&m));
    let th = theorem(&m.sgraph, Orientation::Bar, Flavor::Minus).unwrap().invariants::<Q>(&w, 6);
    let direct = direct_invariants::<Q>(&bad, Flavor::Minus, &w, 6);
    let report = compare(&direct, &th, |n| w.contains(n));
    assert!(!report.pass);
    assert!(report.mismatches[0].contains("degree"), "{:?}", report.mismatches);
    // The unperturbed run is the oracle.
    assert!(compare(&direct_invariants::<Q>(&m, Flavor::Minus, &w, 6), &th, |n| w.contains(n)).pass);
}

#[test]
fn norm_splitting() {
    for g in [GroupId::BinaryOctahedral, GroupId::BinaryTetrahedral, GroupId::BinaryDihedral(5)] {
        let r = norm_vanishing_and_splitting::<Q>(g, 0, 23).unwrap();
        assert!(r.plus_even && r.minus_even);
        assert!(!r.checked.is_empty() && !r.u_bijective.is_empty());
    }
}

#[test]
fn truncated_examples() {
    let m = bar(GroupId::BinaryIcosahedral);
    let n = materialize_levels(&m, -4, 28);
    let minus = truncated_ss::<F7>(&n, Flavor::Minus, 0, 24);
    assert_eq!(minus.nonzero_differentials, [4, 8]);
    assert!(minus.defects().is_empty());
    for fl in [Flavor::Plus, Flavor::Infinity] {
        let ss = truncated_ss::<F7>(&n, fl, 0, 24);
        assert!(ss.nonzero_differentials.is_empty() && ss.defects().is_empty(), "{fl}");
    }
}

fn random_labels(m: &DonaldsonModel, seed: &[i64]) -> BTreeMap<(usize, usize), i64> {
    m.labels.keys().zip(seed.iter().cycle()).map(|(&k, &x)| (k, x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// For arbitrary labels the assembled I⁻ agrees with direct homology
    /// whenever E^∞ is free.
    #[test]
    fn minus_assembly_matches_direct_homology(gi in 0usize..14, seed in proptest::collection::vec(1i64..6, 1..8)) {
        let g = GroupId::sweep(6)[gi % GroupId::sweep(6).len()];
        let base = bar(g);
        let m = build_model_with_labels(base.sgraph.clone(), Orientation::Bar, random_labels(&base, &seed));
        let (page, _) = run_to_einfty::<F7>(&m, Flavor::Minus).unwrap();
        let Ok(module) = assemble(&page, &m) else { return Ok(()) };
        let w = Window::around(0, 15, default_margin(&m));
        let pred = Prediction::Module(module).invariants::<F7>(&w, 6);
        let direct = direct_invariants::<F7>(&m, Flavor::Minus, &w, 6);
        let report = compare(&direct, &pred, |n| w.contains(n));
        prop_assert!(report.pass, "{g} {:?}: {:?}", seed, report.mismatches);
    }

    /// Σ_p dim E^∞ = dim H on random bounded windows, every flavor.
    #[test]
    fn truncated_accounting(gi in 0usize..25, std in any::<bool>(), q in -12i64..4, width in 4i64..24, fl in 0usize..3) {
        let g = GroupId::sweep(12)[gi];
        let o = if std { Orientation::Std } else { Orientation::Bar };
        let m = build_model(g, o).unwrap();
        let n = materialize_levels(&m, q, q + width);
        let ss = truncated_ss::<F5>(&n, Flavor::ALL[fl], q - 2, q + width + 6);
        prop_assert!(ss.defects().is_empty(), "{:?}", ss.defects());
        if !std && fl == 1 {
            prop_assert!(ss.nonzero_differentials.iter().all(|r| r % 4 == 0));
        }
    }
}
