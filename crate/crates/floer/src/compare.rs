use donaldson::{materialize_levels, DonaldsonModel};
use equivariant::{functor_model, Flavor, ModuleInvariants, PresentedModule};
use exactmath::Field;
use serde::{Deserialize, Serialize};

/// Filtration levels (q, p] and the degree range [lo, hi] compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub q: i64,
    pub p: i64,
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    /// Degrees [lo, hi] with `margin` extra levels on both sides, rounded
    /// out to multiples of 4.
    pub fn around(lo: i64, hi: i64, margin: i64) -> Self {
        let q = (lo - margin).div_euclid(4) * 4;
        let p = (hi + margin + 3).div_euclid(4) * 4;
        Window { q, p, lo, hi }
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    /// The bar window dual to a std window: levels (−p−4, −q−4], degrees
    /// negated.
    pub fn dual(&self) -> Window {
        Window { q: -self.p - 4, p: -self.q - 4, lo: -self.hi, hi: -self.lo }
    }
}

/// Level margin keeping truncation effects out of the compared degrees:
/// 4·(#irreducibles + 4).
pub fn default_margin(m: &DonaldsonModel) -> i64 {
    let irr = m.sgraph.vertices.iter().filter(|v| v.rep.kind == grouprep::QuatKind::Irreducible).count() as i64;
    4 * (irr + 4)
}

/// An expected answer: a presented module, or the dual of one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Prediction {
    Module(PresentedModule),
    Dual(PresentedModule),
}

impl Prediction {
    pub fn invariants<F: Field>(&self, w: &Window, kmax: u32) -> ModuleInvariants {
        match self {
            Prediction::Module(m) => m.materialize(w.q, w.p, w.lo, w.hi).homology::<F>().invariants(w.lo, w.hi, kmax),
            Prediction::Dual(m) => {
                let d = w.dual();
                m.materialize(d.q, d.p, d.lo, d.hi).homology::<F>().invariants(d.lo, d.hi, kmax).dual()
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Prediction::Module(m) => m.to_string(),
            Prediction::Dual(m) => format!("Hom({m}, R)"),
        }
    }
}

/// Homology of the flavor functor applied to F_p/F_q of the model.
pub fn direct_invariants<F: Field>(m: &DonaldsonModel, flavor: Flavor, w: &Window, kmax: u32) -> ModuleInvariants {
    let n = materialize_levels(m, w.q, w.p);
    functor_model(&n, flavor, w.lo, w.hi).complex.homology::<F>().invariants(w.lo, w.hi, kmax)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub pass: bool,
    pub degrees: (i64, i64),
    pub mismatches: Vec<String>,
}

/// PASS iff dims and rank U^k (k ≤ 6) agree on every degree accepted by
/// `safe`.
pub fn compare(direct: &ModuleInvariants, predicted: &ModuleInvariants, safe: impl Fn(i64) -> bool) -> CompareReport {
    let mismatches = direct.mismatches(predicted, &safe);
    let lo = direct.dims.keys().next().copied().unwrap_or(0);
    let hi = direct.dims.keys().last().copied().unwrap_or(0);
    CompareReport { pass: mismatches.is_empty(), degrees: (lo, hi), mismatches }
}

