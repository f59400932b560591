use std::collections::BTreeMap;

use donaldson::{
    build_model, build_model_with_labels, generator_census, materialize_levels, materialize_window, psi_matrix,
    psi_power, psi_window, walk_weight, DonaldsonError, DonaldsonModel, Orientation, WindowedComplex,
};
use exactmath::{F3, F5, Q};
use grouprep::{GroupId, QuatKind};
use proptest::prelude::*;

fn groups(max: u32) -> Vec<GroupId> {
    GroupId::sweep(max)
}

fn bar(g: GroupId) -> DonaldsonModel {
    build_model(g, Orientation::Bar).unwrap()
}

fn std_(g: GroupId) -> DonaldsonModel {
    build_model(g, Orientation::Std).unwrap()
}

#[test]
fn bidegree_ranks_match_the_exceptional_figures() {
    // (s, t) → rank for s ∈ {0, 4}, t ∈ {0, 2, 3}.
    let expected = [
        (GroupId::BinaryTetrahedral, [(2, 1, 0), (1, 0, 1)]),
        (GroupId::BinaryOctahedral, [(2, 0, 1), (2, 0, 1)]),
        (GroupId::BinaryIcosahedral, [(2, 0, 1), (1, 0, 1)]),
    ];
    for (g, cols) in expected {
        let m = bar(g);
        for (s, (r0, r2, r3)) in [0, 4].into_iter().zip(cols) {
            assert_eq!(m.at(s, 0).len(), r0, "{g} ({s},0)");
            assert_eq!(m.at(s, 2).len(), r2, "{g} ({s},2)");
            assert_eq!(m.at(s, 3).len(), r3, "{g} ({s},3)");
            assert!(m.at(s, 1).is_empty());
            assert_eq!(m.at(s, 0), m.at(s + 8, 0), "periodicity");
        }
        for s in [1, 2, 3, 5, 6, 7] {
            assert!((0..4).all(|t| m.at(s, t).is_empty()), "{g}: column {s} should vanish");
        }
    }
}

#[test]
fn arrows_match_the_exceptional_figures() {
    let labels = |g: GroupId, s: i64| -> Vec<String> { bar(g).arrows_from(s).iter().map(|a| a.label()).collect() };
    assert_eq!(labels(GroupId::BinaryTetrahedral, 8), ["(1,3)"]);
    assert_eq!(labels(GroupId::BinaryTetrahedral, 4), ["(0)"]);
    assert_eq!(labels(GroupId::BinaryOctahedral, 8), ["(1,3)"]);
    // The figure lists the 4 → 0 sources as (η, α); in the θ-first order
    // the same arrow reads (3,1).
    let mut o4 = bar(GroupId::BinaryOctahedral).arrows_from(4)[0].coeffs.clone();
    o4.sort();
    assert_eq!(o4, [1, 3]);
    assert_eq!(labels(GroupId::BinaryIcosahedral, 8), ["(1,3)"]);
    assert_eq!(labels(GroupId::BinaryIcosahedral, 4), ["(4)"]);
}

#[test]
fn o_star_boundary_has_rank_one() {
    let m = bar(GroupId::BinaryOctahedral);
    let w = materialize_window(&m, 3, 8, 0, 20).unwrap();
    let d = w.differential(8);
    assert_eq!((d.rows, d.cols), (1, 2));
    assert_eq!(d.rank::<Q>(), 1);
    assert_eq!(d.to_field::<Q>().kernel().len(), 1);
}

#[test]
fn bar_differential_never_reaches_non_irreducible_targets() {
    for g in groups(10) {
        let m = bar(g);
        for t in &m.differential {
            assert_eq!(m.generators[t.to].kind, QuatKind::Irreducible, "{g}");
            assert_eq!(t.drop, 4);
        }
    }
}

#[test]
fn axioms_hold_on_windows() {
    for g in groups(9) {
        for m in [bar(g), std_(g)] {
            for (q, p) in [(-1, 7), (-20, 20), (-5, 30)] {
                let w = materialize_levels(&m, q, p);
                w.check_axioms().unwrap_or_else(|e| panic!("{g} {}: {e}", m.orientation));
            }
            let w = materialize_window(&m, -30, 30, -6, 9).unwrap();
            w.check_axioms().unwrap();
        }
    }
}

#[test]
fn t_star_generator_census() {
    let m = bar(GroupId::BinaryTetrahedral);
    let w = materialize_window(&m, -1, 7, 0, 7).unwrap();
    let dims: Vec<usize> = (0..8).map(|n| w.dim(n)).collect();
    assert_eq!(dims, [2, 0, 1, 0, 1, 0, 0, 1]);
    assert_eq!(w.total_dim(), generator_census(&m, -1, 7, 0, 7));
}

#[test]
fn census_matches_direct_count_everywhere() {
    for g in groups(7) {
        for m in [bar(g), std_(g)] {
            for (q, p, lo, hi) in [(-1, 7, 0, 7), (-13, 22, -9, 18), (0, 40, 3, 12)] {
                let w = materialize_window(&m, q, p, lo, hi).unwrap();
                assert_eq!(w.total_dim(), generator_census(&m, q, p, lo, hi), "{g}");
            }
        }
    }
}

#[test]
fn empty_windows_are_zero_complexes() {
    let m = bar(GroupId::BinaryIcosahedral);
    let w = materialize_window(&m, 5, 5, 0, 10).unwrap();
    assert!(w.is_empty());
    assert!(matches!(w.nonempty(), Err(DonaldsonError::EmptyWindow)));
    assert!(materialize_window(&m, 9, 2, 0, 10).unwrap().is_empty());
    assert!(matches!(materialize_window(&m, 0, 8, 4, 3), Err(DonaldsonError::InvalidWindow(_))));
}

#[test]
fn windows_are_eight_periodic() {
    for g in groups(6) {
        for m in [bar(g), std_(g)] {
            let a = materialize_window(&m, -9, 15, -4, 11).unwrap();
            let b = materialize_window(&m, -1, 23, 4, 19).unwrap();
            for n in -4..=11 {
                assert_eq!(a.differential(n), b.differential(n + 8), "{g} degree {n}");
                assert_eq!(a.u_map(n), b.u_map(n + 8));
            }
        }
    }
}

#[test]
fn trivial_group_is_a_single_tower() {
    let m = bar(GroupId::Cyclic(1));
    assert_eq!(m.generators.len(), 1);
    assert!(m.differential.is_empty() && m.u_action.is_empty());
    let w = materialize_levels(&m, -17, 16);
    assert_eq!(w.homology_dims::<Q>(), BTreeMap::from([(-16, 1), (-8, 1), (0, 1), (8, 1), (16, 1)]));
}

/// Std generator matching the dual of a bar generator, and its t.
fn dual_generator(bar: &DonaldsonModel, std: &DonaldsonModel, gen: usize) -> usize {
    let g = &bar.generators[gen];
    let top = match g.kind {
        QuatKind::FullyReducible => false,
        _ => !g.top,
    };
    std.generators.iter().position(|s| s.vertex == g.vertex && s.top == top).unwrap()
}

fn assert_dual(g: GroupId, a: i64, b: i64) {
    let (mb, ms) = (bar(g), std_(g));
    let wide = 8 * 8;
    let y = materialize_window(&ms, -wide, wide, a, b).unwrap();
    let ybar = materialize_window(&mb, -wide, wide, -b, -a).unwrap().dual();
    for n in a..=b {
        let sb = &y.basis.get(&n).cloned().unwrap_or_default();
        let db = &ybar.basis.get(&n).cloned().unwrap_or_default();
        assert_eq!(sb.len(), db.len(), "{g}: degree {n}");
        // Position in the std basis of each dual basis vector.
        let perm: Vec<usize> = db
            .iter()
            .map(|e| {
                let sg = dual_generator(&mb, &ms, e.gen);
                sb.iter().position(|s| s.gen == sg && s.degree == e.degree).expect("dual vector present")
            })
            .collect();
        let pd = |k: i64| -> Vec<usize> {
            ybar.basis
                .get(&k)
                .map(|v| {
                    v.iter()
                        .map(|e| {
                            let sg = dual_generator(&mb, &ms, e.gen);
                            y.basis[&k].iter().position(|s| s.gen == sg).unwrap()
                        })
                        .collect()
                })
                .unwrap_or_default()
        };
        if n > a {
            let dy = y.differential(n);
            let dd = ybar.differential(n);
            let rows = pd(n - 1);
            for &(r, c, v) in &dd.entries {
                assert_eq!(dy.get(rows[r], perm[c]), v, "{g}: ∂ out of degree {n}");
            }
            assert_eq!(dy.entries.len(), dd.entries.len());
        }
    }
}

#[test]
fn std_is_dual_to_bar() {
    for g in groups(9) {
        assert_dual(g, -13, 13);
        assert_dual(g, 2, 21);
    }
}

#[test]
fn bar_and_std_counts_agree_after_regrading() {
    for g in groups(8) {
        let (mb, ms) = (bar(g), std_(g));
        let s = &mb.sgraph;
        for (q, p) in [(-1, 7), (-24, 24), (3, 50)] {
            for v in 0..s.len() {
                let shift = s.vertices[v].j as i64 - s.vertices[v].i as i64;
                let count = |m: &DonaldsonModel, q: i64, p: i64| {
                    let w = materialize_levels(m, q, p);
                    w.basis.values().flatten().filter(|e| m.generators[e.gen].vertex == v).count()
                };
                assert_eq!(count(&mb, q, p), count(&ms, q - shift, p - shift), "{g} {}", s.vertices[v].name());
            }
        }
    }
}

#[test]
fn lambda_lemma_on_windows() {
    for g in groups(9) {
        let m = bar(g);
        let w = materialize_levels(&m, -20, 20);
        let psi = psi_window(&m, &w);
        for &n in w.basis.keys() {
            // ψ(x)·u = (−1)^{|x|} ∂x, landing in degree n − 1.
            let lhs = w.u_map(n - 4).compose(&psi[&n]);
            let rhs = w.differential(n).scale(if n.rem_euclid(2) == 0 { 1 } else { -1 });
            // Boundary effects: the ψ-target level may be cut while ∂ is not.
            let lowest = w.levels.0 + 4;
            let cols: Vec<usize> = (0..w.dim(n)).filter(|&k| w.basis[&n][k].level > lowest).collect();
            for c in cols {
                for r in 0..w.dim(n - 1) {
                    assert_eq!(lhs.get(r, c), rhs.get(r, c), "{g}: degree {n}");
                }
            }
            // ψ kills the images of u and ∂ (both spanned by t-generators).
            if w.basis.contains_key(&(n - 3)) {
                assert!(psi[&n].compose(&w.u_map(n - 3)).is_zero());
            }
            if let Some(d) = w.d.get(&(n + 1)) {
                assert!(psi[&n].compose(d).is_zero());
            }
            for &(r, _, _) in &psi[&n].entries {
                let e = &w.basis[&(n - 4)][r];
                assert_eq!(m.generators[e.gen].kind, QuatKind::Irreducible);
            }
        }
    }
}

fn walks(s: &mckay::SGraph, from: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![from]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap();
                s.neighbors(last).into_iter().map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn psi_powers_count_weighted_walks() {
    for g in groups(8) {
        let m = bar(g);
        let s = &m.sgraph;
        assert_eq!(psi_power(&m, 1), psi_matrix(&m));
        for r in 0..=4u32 {
            let pr = psi_power(&m, r);
            for a in 0..s.len() {
                let mut by_end = vec![0i64; s.len()];
                for w in walks(s, a, r as usize) {
                    by_end[*w.last().unwrap()] += walk_weight(s, &m.labels, &w);
                }
                for b in 0..s.len() {
                    assert_eq!(pr[b][a], by_end[b], "{g}: ψ^{r} from {a} to {b}");
                }
            }
        }
    }
}

#[test]
fn i_star_psi_square_is_four() {
    let m = bar(GroupId::BinaryIcosahedral);
    let s = &m.sgraph;
    let (theta, beta) = (s.index_of("θ").unwrap(), s.index_of("β").unwrap());
    assert_eq!(psi_power(&m, 2)[beta][theta], 4);
}

fn dims_over_q(w: &WindowedComplex) -> BTreeMap<i64, usize> {
    w.homology_dims::<Q>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn single_label_sign_flip_keeps_homology(gi in 0usize..40, edge in 0usize..64, q in -20i64..0, width in 1i64..40) {
        let all = groups(8);
        let g = all[gi % all.len()];
        for o in [Orientation::Bar, Orientation::Std] {
            let m = build_model(g, o).unwrap();
            if m.labels.is_empty() {
                continue;
            }
            let key = *m.labels.keys().nth(edge % m.labels.len()).unwrap();
            let mut flipped = m.labels.clone();
            *flipped.get_mut(&key).unwrap() *= -1;
            let f = build_model_with_labels(m.sgraph.clone(), o, flipped);
            let (a, b) = (materialize_levels(&m, q, q + width), materialize_levels(&f, q, q + width));
            prop_assert!(b.check_axioms().is_ok());
            prop_assert_eq!(dims_over_q(&a), dims_over_q(&b));
            prop_assert_eq!(a.homology_dims::<F5>(), b.homology_dims::<F5>());
            prop_assert_eq!(a.homology_dims::<F3>(), b.homology_dims::<F3>());
        }
    }
}
