use grouprep::{character_table, quaternionic_reps, GroupId};
use mckay::*;
use proptest::prelude::*;

fn sweep() -> Vec<GroupId> {
    let mut v = GroupId::sweep(12);
    v.push(GroupId::Cyclic(1));
    v
}

fn rep(g: GroupId, name: &str) -> VirtualRep {
    quaternionic_reps(g).into_iter().find(|r| r.name == name).unwrap().character
}

fn irr(g: GroupId, name: &str) -> VirtualRep {
    let t = character_table(g);
    VirtualRep::basis(t.len(), t.index_of(name).unwrap())
}

#[test]
fn mckay_graph_types_and_marks() {
    let o = mckay_graph(GroupId::BinaryOctahedral).unwrap();
    assert_eq!(o.dynkin, Dynkin::E(7));
    // Central vertex ρ8 of dimension 4 has three neighbors.
    let c = o.names.iter().position(|n| n == "ρ8").unwrap();
    assert_eq!(o.dims[c], 4);
    assert_eq!(o.neighbors(c).len(), 3);
    let mut marks = o.dims.clone();
    marks.sort();
    assert_eq!(marks, vec![1, 1, 2, 2, 2, 3, 3, 4]);

    // C3: a triangle, computed directly from Q = ρ1 + ρ2.
    let c3 = mckay_graph(GroupId::Cyclic(3)).unwrap();
    assert_eq!(c3.dynkin, Dynkin::A(2));
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(c3.adjacency[i][j], i64::from(i != j));
        }
    }

    // D*2: a star with 4 leaves around τ1.
    let d2 = mckay_graph(GroupId::BinaryDihedral(2)).unwrap();
    assert_eq!(d2.dynkin, Dynkin::D(4));
    assert_eq!(d2.neighbors(4), vec![0, 1, 2, 3]);
    for i in 0..4 {
        assert_eq!(d2.neighbors(i), vec![4]);
    }

    for g in sweep() {
        let m = mckay_graph(g).unwrap();
        for i in 0..m.len() {
            let s: i64 = (0..m.len()).map(|j| m.adjacency[i][j] * m.dims[j]).sum();
            assert_eq!(s, 2 * m.dims[i], "{g}");
        }
    }
}

#[test]
fn quotient_graphs() {
    let q = |g: GroupId| {
        let m = mckay_graph(g).unwrap();
        quotient_graph(&m, &character_table(g).dual)
    };
    let t = q(GroupId::BinaryTetrahedral);
    assert_eq!(t.orbits.len(), 5);
    assert_eq!(t.edge_count(), 4);
    assert!((0..5).all(|a| (0..5).filter(|&b| t.adjacency[a][b]).count() <= 2));

    let c4 = q(GroupId::Cyclic(4));
    assert_eq!(c4.orbits, vec![vec![0], vec![1, 3], vec![2]]);
    assert_eq!(c4.edge_count(), 2);

    let i = q(GroupId::BinaryIcosahedral);
    assert_eq!(i.orbits.len(), 9);
    assert_eq!(i.edge_count(), 8);

    for g in sweep() {
        let qg = q(g);
        let k = qg.orbits.len();
        let looped = qg.loops.iter().filter(|l| **l).count();
        let odd_cyclic = matches!(g, GroupId::Cyclic(l) if l % 2 == 1 && l > 1);
        assert_eq!(looped, usize::from(odd_cyclic), "{g}");
        if k > 0 {
            assert_eq!(qg.edge_count(), k - 1, "{g} quotient is a tree");
        }
    }
}

#[test]
fn recognize_subgroups() {
    let path = |n: usize| -> Vec<Vec<i64>> {
        (0..n).map(|i| (0..n).map(|j| i64::from(i.abs_diff(j) == 1)).collect()).collect()
    };
    let a = path(1);
    assert_eq!(recognize_subgroup(&a, &[0]).unwrap(), (GroupId::Cyclic(2), 2));
    // D6: path of 5 with an extra leaf on the fourth vertex.
    let mut d = path(6);
    d[4][5] = 0;
    d[5][4] = 0;
    d[3][5] = 1;
    d[5][3] = 1;
    let all: Vec<usize> = (0..6).collect();
    assert_eq!(recognize_dynkin(&d, &all).unwrap(), Dynkin::D(6));
    assert_eq!(recognize_subgroup(&d, &all).unwrap(), (GroupId::BinaryDihedral(4), 16));
    for i in 1..6u32 {
        let n = 2 * (i as usize + 1);
        let mut d = path(n);
        d[n - 2][n - 1] = 0;
        d[n - 1][n - 2] = 0;
        d[n - 3][n - 1] = 1;
        d[n - 1][n - 3] = 1;
        let all: Vec<usize> = (0..n).collect();
        assert_eq!(recognize_subgroup(&d, &all).unwrap(), (GroupId::BinaryDihedral(2 * i), 8 * i as u64));
    }
    // A 4-cycle is not Dynkin.
    let mut c = path(4);
    c[0][3] = 1;
    c[3][0] = 1;
    assert!(matches!(recognize_subgroup(&c, &[0, 1, 2, 3]), Err(McKayError::NotDynkin(_))));
}

#[test]
fn octahedral_equation_examples() {
    let g = GroupId::BinaryOctahedral;
    let h = solve_rep_equation(g, &rep(g, "η"), &rep(g, "β")).unwrap();
    assert_eq!(h, irr(g, "ρ2"));
    assert_eq!(h.epsilon(&character_table(g).dims()), 1);

    let h = solve_rep_equation(g, &rep(g, "β"), &rep(g, "α")).unwrap();
    assert_eq!(h.epsilon(&character_table(g).dims()), 24);
    let s = edge_solution(g, &rep(g, "β"), &rep(g, "α")).unwrap();
    assert_eq!(s.sub, GroupId::BinaryDihedral(4));

    let a = rep(g, "α");
    assert_eq!(solve_rep_equation(g, &a, &a).unwrap(), VirtualRep::zero(8));
}

#[test]
fn icosahedral_labels_from_both_constructions() {
    let g = GroupId::BinaryIcosahedral;
    let (a, b) = (rep(g, "α"), rep(g, "β"));
    let back = edge_solution(g, &a, &b).unwrap();
    assert_eq!((back.sub, back.epsilon), (GroupId::BinaryDihedral(6), 48));
    let fwd = edge_solution(g, &b, &a).unwrap();
    assert_eq!((fwd.sub, fwd.epsilon), (GroupId::BinaryOctahedral, 72));
    assert_eq!(graphical_solution(g, &a, &b).unwrap(), (back.h, back.sub));
    assert_eq!(graphical_solution(g, &b, &a).unwrap(), (fwd.h, fwd.sub));
}

#[test]
fn s_graphs_match_reference_across_sweep() {
    for g in sweep() {
        let s = s_graph(g).unwrap();
        let diff = compare_with_reference(&s, &reference_graph(g));
        assert!(diff.is_empty(), "{g}: {diff:?}");
    }
    let i = s_graph(GroupId::BinaryIcosahedral).unwrap();
    assert_eq!(i.edge_text(1, 2), "(3|4)");
    assert_eq!(i.edge_text(0, 1), "1");
    let t = s_graph(GroupId::BinaryTetrahedral).unwrap();
    assert_eq!(t.edge_text(1, 2), "3");
}

#[test]
fn mutated_reference_names_the_edge() {
    let g = GroupId::BinaryOctahedral;
    let s = s_graph(g).unwrap();
    let mut r = reference_graph(g);
    r.labels.iter_mut().find(|l| l.0 == "α" && l.1 == "β").unwrap().2 = 4;
    let diff = compare_with_reference(&s, &r);
    assert_eq!(diff.len(), 1);
    assert!(diff[0].starts_with("edge α—β"), "{}", diff[0]);

    let mut r = reference_graph(g);
    r.edges.pop();
    assert!(compare_with_reference(&s, &r)[0].contains("β—η"));
}

#[test]
fn equation_holds_for_all_pairs() {
    for g in sweep() {
        let m = mckay_graph(g).unwrap();
        let reps = quaternionic_reps(g);
        for a in &reps {
            for b in &reps {
                let h = solve_rep_equation(g, &a.character, &b.character).unwrap();
                assert!(h.is_actual() && h.0.contains(&0), "{g} {} {}", a.name, b.name);
                assert_eq!(apply_two_minus_q(&m, &h), a.character.sub(&b.character));
            }
        }
    }
}

#[test]
fn path_additivity() {
    for g in sweep() {
        let s = s_graph(g).unwrap();
        let ch = |k: usize| &s.vertices[k].rep.character;
        for a in 0..s.len() {
            for b in 0..s.len() {
                if a == b || s.adjacent(a, b) {
                    continue;
                }
                let path = s.path(a, b).unwrap();
                let mut sum = VirtualRep::zero(ch(a).0.len());
                for w in path.windows(2) {
                    sum = sum.add(&solve_rep_equation(g, ch(w[0]), ch(w[1])).unwrap());
                }
                assert_eq!(solve_rep_equation(g, ch(a), ch(b)).unwrap(), sum, "{g}: {a}→{b}");
            }
        }
    }
}

#[test]
fn graph_invariants() {
    for g in sweep() {
        let s = s_graph(g).unwrap();
        assert_eq!(s.vertices[0].j, 0);
        for v in &s.vertices {
            assert_eq!(v.j % 4, 0);
        }
        for &(a, b) in &s.edges {
            assert_eq!((s.vertices[a].j + 4) % 8, s.vertices[b].j, "{g}");
        }
        for (&(a, b), &n) in &s.labels {
            assert!(n > 0 && s.adjacent(a, b));
        }
        // Non-adjacent pairs carry label 0.
        for a in 0..s.len() {
            for b in 0..s.len() {
                if !s.adjacent(a, b) {
                    assert_eq!(s.label(a, b), 0);
                }
            }
        }
        // n_{βη} = 1 when η = 2ρ with ρ ⊗ Q irreducible.
        let t = character_table(g);
        for (k, v) in s.vertices.iter().enumerate() {
            if v.rep.kind != grouprep::QuatKind::FullyReducible {
                continue;
            }
            let qr = grouprep::q_tensor(g, v.rep.constituents[0]).unwrap();
            if qr.0.iter().sum::<i64>() == 1 && qr.0.iter().all(|x| *x <= 1) {
                for b in s.neighbors(k) {
                    if s.vertices[b].is_irreducible() {
                        assert_eq!(s.label(b, k), 1, "{g}");
                    }
                }
            }
        }
        let _ = t;
    }
}

#[test]
fn dihedral_mirror_symmetry() {
    for m in 1..=6u32 {
        let g = GroupId::BinaryDihedral(2 * m);
        let s = s_graph(g).unwrap();
        let name = |k: usize| s.vertices[k].name().to_string();
        let mirror = |n: &str| -> String {
            match n {
                "θ" => "η2".into(),
                "η1" => "η3".into(),
                "η2" => "θ".into(),
                "η3" => "η1".into(),
                a => format!("α{}", m + 1 - a[2..].parse::<u32>().unwrap()),
            }
        };
        for (&(a, b), &n) in &s.labels {
            let (ma, mb) = (s.index_of(&mirror(&name(a))).unwrap(), s.index_of(&mirror(&name(b))).unwrap());
            assert_eq!(s.label(ma, mb), n, "{g}: {} {}", name(a), name(b));
        }
    }
}

#[test]
fn dot_round_trip() {
    for g in sweep() {
        let s = s_graph(g).unwrap();
        let d = parse_dot(&s.to_dot()).unwrap();
        assert_eq!(d.vertices.len(), s.len());
        for (k, v) in s.vertices.iter().enumerate() {
            assert_eq!(d.vertices[k], (v.rep.name.clone(), v.rep.kind.short().to_string(), v.j, v.i));
        }
        assert_eq!(d.edges.len(), s.edges.len());
        for &(x, y, f, b) in &d.edges {
            assert!(s.adjacent(x, y));
            assert_eq!((s.label(x, y), s.label(y, x)), (f, b));
        }
    }
}

proptest! {
    #[test]
    fn solver_agrees_with_graphical_oracle_on_edges(pick in 0usize..1000) {
        let groups = sweep();
        let g = groups[pick % groups.len()];
        let s = s_graph(g).unwrap();
        prop_assume!(!s.edges.is_empty());
        let (a, b) = s.edges[(pick / groups.len()) % s.edges.len()];
        for (x, y) in [(a, b), (b, a)] {
            let (cx, cy) = (&s.vertices[x].rep.character, &s.vertices[y].rep.character);
            let alg = edge_solution(g, cx, cy).unwrap();
            let (gh, sub) = graphical_solution(g, cx, cy).unwrap();
            prop_assert_eq!(&alg.h, &gh);
            prop_assert_eq!(alg.sub, sub);
        }
    }
}
