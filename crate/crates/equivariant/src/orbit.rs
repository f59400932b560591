use std::collections::BTreeMap;

use donaldson::{BasisElem, IntMat, WindowedComplex};
use grouprep::QuatKind;

use crate::module::{Family, Periodicity, PresentedModule, Shape};
use crate::Flavor;

/// H_*(orbit) as a Λ[u]-module at level 0: R (fully reducible), R ⊕ R[2]
/// with u = 0 (reducible), Λ[u] (irreducible).
pub fn orbit_complex(kind: QuatKind) -> WindowedComplex {
    let elem = |name: &str, gen: usize, degree: i64| BasisElem { name: name.into(), gen, shift: 0, level: 0, degree };
    let mut basis = BTreeMap::new();
    let mut u = BTreeMap::new();
    basis.insert(0, vec![elem("b", 0, 0)]);
    match kind {
        QuatKind::FullyReducible => {}
        QuatKind::Reducible => {
            basis.insert(2, vec![elem("t", 1, 2)]);
        }
        QuatKind::Irreducible => {
            basis.insert(3, vec![elem("t", 1, 3)]);
            u.insert(0, IntMat::from_entries(1, 1, [(0, 0, 1)]));
        }
    }
    let top = if kind == QuatKind::Irreducible { 3 } else { 2 };
    WindowedComplex::from_parts((-1, 0), (0, top), basis, BTreeMap::new(), u)
}

/// Family of the orbit homology of one orbit at `level`, with `sym` the
/// vertex subscript; `None` for the zero module.
pub fn orbit_family(kind: QuatKind, flavor: Flavor, level: i64, sym: &str) -> Option<Family> {
    let fam = |letter: &str, offset: i64, shape: Shape| {
        let symbol = if sym.is_empty() { letter.to_string() } else { format!("{letter}_{sym}") };
        let name = if shape == Shape::Single { symbol.clone() } else { format!("{symbol}^0") };
        Some(Family { name, symbol, level, offset, shape })
    };
    use QuatKind::*;
    match (flavor, kind) {
        (Flavor::Plus, FullyReducible) => fam("V", 0, Shape::Up { step: 4 }),
        (Flavor::Plus, Reducible) => fam("W", 0, Shape::Up { step: 2 }),
        (Flavor::Plus, Irreducible) => fam("g", 0, Shape::Single),
        (Flavor::Minus, FullyReducible) => fam("U", 0, Shape::Down { step: 4 }),
        (Flavor::Minus, Reducible) => fam("Z", 2, Shape::Down { step: 2 }),
        (Flavor::Minus, Irreducible) => fam("h", 3, Shape::Single),
        (Flavor::Infinity, FullyReducible) => fam("T", 0, Shape::Laurent { step: 4 }),
        (Flavor::Infinity, Reducible) => fam("S", 0, Shape::Laurent { step: 2 }),
        (Flavor::Infinity, Irreducible) => None,
    }
}

/// H^•_A of a single orbit in closed form: R[V] / R[W] / R (+), R[U] /
/// R[Z][2] / R[3] (−), R[T,T⁻¹] / R[S,S⁻¹] / 0 (∞).
pub fn orbit_homology(kind: QuatKind, flavor: Flavor) -> PresentedModule {
    let families = orbit_family(kind, flavor, 0, "").into_iter().collect();
    PresentedModule { periodicity: Periodicity::Finite, families, corrections: Vec::new() }
}
