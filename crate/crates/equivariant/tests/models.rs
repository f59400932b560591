use std::collections::BTreeMap;

use donaldson::{build_model, materialize_levels, materialize_window, Orientation, WindowedComplex};
use equivariant::*;
use exactmath::{Field, F3, F5, Q};
use grouprep::{GroupId, QuatKind};
use proptest::prelude::*;

const KINDS: [QuatKind; 3] = [QuatKind::FullyReducible, QuatKind::Reducible, QuatKind::Irreducible];

fn dims<F: Field>(m: &FunctorModel) -> BTreeMap<i64, usize> {
    let h = m.complex.homology::<F>();
    (m.degrees.0..=m.degrees.1).map(|n| (n, h.dim(n))).filter(|&(_, d)| d > 0).collect()
}

fn support(m: &FunctorModel) -> Vec<i64> {
    dims::<Q>(m).into_keys().collect()
}

#[test]
fn free_orbit_homology() {
    let n = orbit_complex(QuatKind::Irreducible);
    assert_eq!(support(&functor_model(&n, Flavor::Plus, -20, 20)), vec![0]);
    assert_eq!(support(&functor_model(&n, Flavor::Minus, -20, 20)), vec![3]);
    assert!(support(&functor_model(&n, Flavor::Infinity, -20, 20)).is_empty());
}

#[test]
fn orbit_homology_examples() {
    let fred_plus = functor_model(&orbit_complex(QuatKind::FullyReducible), Flavor::Plus, -8, 16);
    assert_eq!(support(&fred_plus), vec![0, 4, 8, 12, 16]);
    let red_minus = functor_model(&orbit_complex(QuatKind::Reducible), Flavor::Minus, -6, 6);
    assert_eq!(support(&red_minus), vec![-6, -4, -2, 0, 2]);
    assert!(orbit_homology(QuatKind::Irreducible, Flavor::Infinity).families.is_empty());
}

/// The closed forms agree with the double-complex homology, including the
/// U-rules (ranks of U^k).
#[test]
fn orbit_closed_forms_match_models() {
    for kind in KINDS {
        for flavor in Flavor::ALL {
            let model = functor_model(&orbit_complex(kind), flavor, -24, 24);
            let direct = model.complex.homology::<Q>().invariants(-24, 24, 6);
            let closed = orbit_homology(kind, flavor).materialize(-1, 0, -24, 24).homology::<Q>().invariants(-24, 24, 6);
            assert_eq!(direct, closed, "{kind:?} {flavor}");
        }
    }
}

#[test]
fn reducible_plus_u_rule() {
    // U·W^p = W^{p−2}: zero out of degree 2, iso out of degree 4.
    let h = functor_model(&orbit_complex(QuatKind::Reducible), Flavor::Plus, -4, 12).complex.homology::<Q>();
    assert_eq!(h.u_rank(2, 1), 0);
    assert_eq!(h.u_rank(4, 1), 1);
    assert_eq!(h.u_rank(6, 1), 1);
}

fn group_window(g: GroupId, o: Orientation, q: i64, p: i64) -> WindowedComplex {
    materialize_levels(&build_model(g, o).unwrap(), q, p)
}

fn groups() -> Vec<GroupId> {
    GroupId::sweep(8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn totalizations_are_complexes(gi in 0usize..23, bar in any::<bool>(), q in -12i64..4, w in 1i64..24, lo in -16i64..8, f in 0usize..3) {
        let gs = groups();
        let g = gs[gi % gs.len()];
        let o = if bar { Orientation::Bar } else { Orientation::Std };
        let n = group_window(g, o, q, q + w);
        let m = functor_model(&n, Flavor::ALL[f], lo, lo + 16);
        prop_assert!(m.complex.check().is_ok(), "{:?}", m.complex.check());
    }
}

#[test]
fn tate_u_is_bijective_on_chains() {
    for g in [GroupId::BinaryTetrahedral, GroupId::BinaryIcosahedral, GroupId::BinaryDihedral(5)] {
        let m = functor_model(&group_window(g, Orientation::Bar, -9, 23), Flavor::Infinity, -4, 28);
        for n in m.complex.range.0 + 4..=m.complex.range.1 {
            let u = m.complex.u_map(n);
            assert_eq!(u.rows, u.cols);
            assert_eq!(u.rank::<Q>(), u.cols, "{g} degree {n}");
        }
        let h = m.complex.homology::<Q>();
        for n in 0..=28 {
            assert_eq!(h.u_rank(n, 1), h.dim(n));
            assert_eq!(h.dim(n), h.dim(n - 4));
        }
    }
}

#[test]
fn norm_identities_and_cone() {
    for g in [GroupId::BinaryTetrahedral, GroupId::BinaryOctahedral, GroupId::Cyclic(5), GroupId::BinaryDihedral(6)] {
        for o in [Orientation::Bar, Orientation::Std] {
            let nd = norm_data(&group_window(g, o, -5, 19), -8, 24);
            nd.check_chain_map().unwrap();
            nd.check_homotopy().unwrap();
            nd.check_cone_iso().unwrap();
            nd.cone.check().unwrap();
        }
    }
}

#[test]
fn bar_oracle_examples() {
    let fred = orbit_complex(QuatKind::FullyReducible);
    let r = bar_oracle::<Q>(&fred, Flavor::Plus, 0, 20).unwrap();
    assert_eq!(r.model_dims, r.oracle_dims);
    let support: Vec<i64> = r.oracle_dims.iter().filter(|(_, &d)| d > 0).map(|(&n, _)| n).collect();
    assert_eq!(support, vec![0, 4, 8, 12, 16, 20]);

    let zero = WindowedComplex::default();
    for flavor in [Flavor::Plus, Flavor::Minus] {
        let r = bar_oracle::<Q>(&zero, flavor, 0, 12).unwrap();
        assert!(r.oracle_dims.values().all(|&d| d == 0));
    }

    let t = materialize_window(&build_model(GroupId::BinaryTetrahedral, Orientation::Bar).unwrap(), -1, 7, 0, 12).unwrap();
    let r = bar_oracle::<Q>(&t, Flavor::Plus, 0, 12).unwrap();
    assert_eq!(r.model_dims, r.oracle_dims);
    assert!(matches!(bar_oracle::<Q>(&t, Flavor::Infinity, 0, 12), Err(EquivariantError::WrongFlavor(_))));
}

#[test]
fn bar_oracle_all_small_groups() {
    for g in GroupId::sweep(6) {
        for o in [Orientation::Bar, Orientation::Std] {
            let n = group_window(g, o, -1, 23);
            for flavor in [Flavor::Plus, Flavor::Minus] {
                let r = bar_oracle::<F5>(&n, flavor, 0, 23).unwrap_or_else(|e| panic!("{g} {o} {flavor}: {e}"));
                assert_eq!(r.model_dims, r.oracle_dims);
            }
        }
    }
}

#[test]
fn triangle_examples() {
    let free = exact_triangle_check::<Q>(&orbit_complex(QuatKind::Irreducible), -16, 16).unwrap();
    assert!(free.rows.iter().all(|r| r.h_infinity == 0));
    // H(ν) is an isomorphism H⁺_0 → H⁻_3 here.
    assert!(free.rows.iter().any(|r| r.degree == 3 && r.nu_in == 1));

    let fred = exact_triangle_check::<Q>(&orbit_complex(QuatKind::FullyReducible), -16, 16).unwrap();
    for r in fred.interior() {
        assert_eq!((r.nu_in, r.nu_out), (0, 0));
        assert_eq!(r.h_infinity, r.h_minus + r.h_plus_shifted);
    }

    let zero = exact_triangle_check::<Q>(&WindowedComplex::default(), -8, 8).unwrap();
    assert!(zero.rows.iter().all(|r| r.h_infinity + r.h_minus + r.h_plus_shifted == 0));
}

#[test]
fn triangle_on_group_windows() {
    for g in [GroupId::BinaryIcosahedral, GroupId::BinaryDihedral(7), GroupId::Cyclic(6)] {
        for o in [Orientation::Bar, Orientation::Std] {
            let n = group_window(g, o, -9, 23);
            exact_triangle_check::<Q>(&n, -4, 28).unwrap();
            exact_triangle_check::<F3>(&n, -4, 28).unwrap();
        }
    }
}

#[test]
fn u_long_exact_sequence() {
    for g in [GroupId::BinaryTetrahedral, GroupId::BinaryOctahedral, GroupId::BinaryDihedral(4)] {
        for o in [Orientation::Bar, Orientation::Std] {
            u_sequence_check::<Q>(&group_window(g, o, -5, 19), -12, 28).unwrap();
        }
    }
}

#[test]
fn flavor_parsing() {
    for f in Flavor::ALL {
        assert_eq!(f.to_string().parse::<Flavor>().unwrap(), f);
    }
    assert!("x".parse::<Flavor>().is_err());
}
