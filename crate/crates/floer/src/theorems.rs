//! The closed-form answers, encoded from the vertex data of S_Γ alone
//! (labels and gradings), independently of the spectral sequence.

use donaldson::Orientation;
use equivariant::{orbit_family, Correction, Family, Flavor, Periodicity, PresentedModule, Shape};
use exactmath::Field;
use grouprep::{GroupId, QuatKind};
use mckay::SGraph;
use serde::{Deserialize, Serialize};

use crate::subspace::Subspace;
use crate::{FloerError, Prediction};

fn is_irr(s: &SGraph, v: usize) -> bool {
    s.vertices[v].rep.kind == QuatKind::Irreducible
}

fn families(s: &SGraph, flavor: Flavor, level: impl Fn(usize) -> i64) -> (Vec<Family>, Vec<Option<usize>>) {
    let mut fams = Vec::new();
    let mut index = Vec::new();
    for (v, vert) in s.vertices.iter().enumerate() {
        match orbit_family(vert.rep.kind, flavor, level(v), &vert.rep.name) {
            Some(f) => {
                index.push(Some(fams.len()));
                fams.push(f);
            }
            None => index.push(None),
        }
    }
    (fams, index)
}

/// I⁺(Ȳ_Γ): g_α, W_λ, V_η at j, with U on the bottom of every family
/// given by Σ_ρ n_{ρ·} g_ρ.
pub fn theorem_plus_bar(s: &SGraph) -> PresentedModule {
    let (families, index) = families(s, Flavor::Plus, |v| s.vertices[v].j as i64);
    let mut corrections = Vec::new();
    for v in 0..s.len() {
        for rho in s.neighbors(v).into_iter().filter(|&r| is_irr(s, r)) {
            let coeff = s.label(rho, v);
            if coeff != 0 {
                corrections.push(Correction { from: index[v].unwrap(), to: index[rho].unwrap(), drop: 4, coeff });
            }
        }
    }
    PresentedModule { periodicity: Periodicity::ProductUp, families, corrections }
}

/// I^∞: Laurent families T_η, S_λ at j; irreducibles contribute nothing.
pub fn theorem_infinity_bar(s: &SGraph) -> PresentedModule {
    let (families, _) = families(s, Flavor::Infinity, |v| s.vertices[v].j as i64);
    PresentedModule { periodicity: Periodicity::ProductDown, families, corrections: Vec::new() }
}

/// I⁻(Y_Γ): h′_α, Z_λ, U_η in degrees ≡ j, placed at the std levels i,
/// with U·h′_α = Σ n_{αβ} h′_β + Σ n_{αλ} Z⁰_λ + Σ n_{αη} U⁰_η.
pub fn theorem_minus_std(s: &SGraph) -> PresentedModule {
    let (mut families, index) = families(s, Flavor::Minus, |v| s.vertices[v].i as i64);
    for (v, f) in s.vertices.iter().zip(families.iter_mut()) {
        if f.shape == Shape::Single {
            f.symbol = format!("h′_{}", v.rep.name);
            f.name = f.symbol.clone();
        }
    }
    let mut corrections = Vec::new();
    for a in (0..s.len()).filter(|&a| is_irr(s, a)) {
        for w in s.neighbors(a) {
            let coeff = s.label(a, w);
            if coeff == 0 {
                continue;
            }
            // U lowers degree by 4; the drop in level follows from the offsets.
            let (from, to) = (&families[index[a].unwrap()], &families[index[w].unwrap()]);
            let drop = 4 + to.offset - from.offset;
            debug_assert_eq!((from.level - drop - to.level).rem_euclid(8), 0);
            corrections.push(Correction { from: index[a].unwrap(), to: index[w].unwrap(), drop, coeff });
        }
    }
    PresentedModule { periodicity: Periodicity::Sum, families, corrections }
}

/// One term c·X_v^k of a generator; X is U for fully reducible v and Z for
/// reducible v.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableTerm {
    pub vertex: usize,
    pub power: i64,
    pub coeff: i64,
}

/// I⁻(Ȳ_Γ) = X^{⊕,8} with X ⊂ P generated by `generators`; P is the
/// free module on the (fully) reducible towers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinusTable {
    pub group: GroupId,
    pub generators: Vec<Vec<TableTerm>>,
}

impl MinusTable {
    fn letter(s: &SGraph, v: usize) -> &'static str {
        if s.vertices[v].rep.kind == QuatKind::Reducible {
            "Z"
        } else {
            "U"
        }
    }

    /// (column, row t) of a term in the E¹ page.
    pub fn position(s: &SGraph, t: &TableTerm) -> (i64, i64) {
        let j = s.vertices[t.vertex].j as i64;
        match Self::letter(s, t.vertex) {
            "Z" => (j, 2 - 2 * t.power),
            _ => (j, -4 * t.power),
        }
    }

    pub fn name(s: &SGraph, g: &[TableTerm]) -> String {
        let mut out = String::new();
        for (i, t) in g.iter().enumerate() {
            let sign = if t.coeff < 0 { "−" } else if i > 0 { "+" } else { "" };
            let c = if t.coeff.abs() == 1 { String::new() } else { t.coeff.abs().to_string() };
            out.push_str(&format!("{sign}{c}{}_{}^{}", Self::letter(s, t.vertex), s.vertices[t.vertex].rep.name, t.power));
        }
        out
    }

    pub fn module(&self, s: &SGraph) -> PresentedModule {
        let families = self
            .generators
            .iter()
            .map(|g| {
                let (level, t) = Self::position(s, &g[0]);
                let name = Self::name(s, g);
                let symbol = if g.len() == 1 && g[0].coeff == 1 { name.clone() } else { format!("({name})") };
                Family { name, symbol, level, offset: t, shape: Shape::Down { step: 4 } }
            })
            .collect();
        PresentedModule { periodicity: Periodicity::Sum, families, corrections: Vec::new() }
    }

    /// The span of U^k·G in E¹_{s,t}, on the given generator list.
    pub fn span_in<F: Field>(&self, s: &SGraph, column: i64, row: i64, gens: &[(usize, i64)]) -> Subspace<F> {
        let mut span = Subspace::zero(gens.len());
        for g in &self.generators {
            let (c, t0) = Self::position(s, &g[0]);
            if c.rem_euclid(8) != column.rem_euclid(8) || row > t0 || (t0 - row) % 4 != 0 {
                continue;
            }
            let k = (t0 - row) / 4;
            let mut v = vec![F::zero(); gens.len()];
            for t in g {
                let step = if Self::letter(s, t.vertex) == "Z" { 2 } else { 1 };
                if let Some(i) = gens.iter().position(|&x| x == (t.vertex, t.power + step * k)) {
                    v[i] = v[i].clone() + F::from_i64(t.coeff);
                }
            }
            span.insert(&v);
        }
        span
    }
}

fn resolve(s: &SGraph, name: &str) -> Result<usize, FloerError> {
    s.index_of(name).ok_or_else(|| FloerError::UnknownVertex(name.to_string()))
}

/// The generator table of I⁻(Ȳ_Γ) for every Γ.
pub fn theorem_minus_bar(s: &SGraph) -> Result<MinusTable, FloerError> {
    let term = |name: &str, power: i64, coeff: i64| -> Result<TableTerm, FloerError> {
        Ok(TableTerm { vertex: resolve(s, name)?, power, coeff })
    };
    let one = |name: &str, power: i64| term(name, power, 1).map(|t| vec![t]);
    let diff = |a: &str, b: &str, pa: i64, pb: i64, ca: i64| -> Result<Vec<TableTerm>, FloerError> {
        Ok(vec![term(a, pa, ca)?, term(b, pb, -1)?])
    };
    let generators = match s.group {
        GroupId::Cyclic(_) => {
            let mut g = Vec::new();
            for (v, vert) in s.vertices.iter().enumerate() {
                g.push(vec![TableTerm { vertex: v, power: 0, coeff: 1 }]);
                if vert.rep.kind == QuatKind::Reducible {
                    g.push(vec![TableTerm { vertex: v, power: 1, coeff: 1 }]);
                }
            }
            g
        }
        GroupId::BinaryIcosahedral => vec![one("θ", 2)?],
        GroupId::BinaryOctahedral => vec![one("θ", 1)?, one("η", 1)?],
        GroupId::BinaryTetrahedral => vec![one("θ", 1)?, one("λ", 0)?, diff("θ", "λ", 0, 1, 3)?],
        GroupId::BinaryDihedral(m) => {
            let n = (m / 4) as i64;
            match m % 4 {
                0 => vec![diff("θ", "η1", 0, 0, 1)?, diff("η2", "η3", 0, 0, 1)?, one("θ", n)?, one("η2", n)?],
                1 => vec![diff("θ", "η", 0, 0, 1)?, one("λ", 0)?, one("θ", n)?, one("λ", 2 * n + 1)?],
                2 => vec![diff("θ", "η1", 0, 0, 1)?, diff("η2", "η3", 0, 0, 1)?, diff("θ", "η2", n, n, 1)?, one("θ", n + 1)?],
                _ => vec![diff("θ", "η", 0, 0, 1)?, one("λ", 0)?, diff("θ", "λ", n, 2 * n + 1, 2)?, one("θ", n + 1)?],
            }
        }
    };
    Ok(MinusTable { group: s.group, generators })
}

/// The encoded answer for one (orientation, flavor); I⁺(Y_Γ) is the dual
/// of I⁻(Ȳ_Γ).
pub fn theorem(s: &SGraph, orientation: Orientation, flavor: Flavor) -> Result<Prediction, FloerError> {
    Ok(match (orientation, flavor) {
        (Orientation::Bar, Flavor::Plus) => Prediction::Module(theorem_plus_bar(s)),
        (Orientation::Bar, Flavor::Minus) => Prediction::Module(theorem_minus_bar(s)?.module(s)),
        (Orientation::Bar, Flavor::Infinity) => Prediction::Module(theorem_infinity_bar(s)),
        (Orientation::Std, Flavor::Minus) => Prediction::Module(theorem_minus_std(s)),
        (Orientation::Std, Flavor::Plus) => Prediction::Dual(theorem_minus_bar(s)?.module(s)),
        (Orientation::Std, Flavor::Infinity) => {
            return Err(FloerError::Unsupported("I^∞ is encoded for the bar orientation".into()))
        }
    })
}
