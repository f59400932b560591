//! Donaldson models DCI(Ȳ_Γ) and DCI(Y_Γ): mod-8 periodic multicomplexes
//! on the orbit homology of the flat connections, with finite windows.

mod chain;
mod psi;
mod window;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use grouprep::{GroupId, QuatKind};
use mckay::{s_graph, McKayError, SGraph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use chain::IntMat;
pub use psi::{psi_matrix, psi_power, psi_window, walk_weight};
pub use window::{generator_census, materialize_levels, materialize_window, BasisElem, WindowedComplex};

#[derive(Debug, Error)]
pub enum DonaldsonError {
    #[error(transparent)]
    McKay(#[from] McKayError),
    #[error("window contains no generators")]
    EmptyWindow,
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("invalid orientation {0:?}")]
    InvalidOrientation(String),
}

/// Ȳ_Γ (`Bar`, reversed orientation) or Y_Γ (`Std`, induced from S³).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Bar,
    Std,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Bar => "bar",
            Orientation::Std => "std",
        })
    }
}

impl FromStr for Orientation {
    type Err = DonaldsonError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bar" => Ok(Orientation::Bar),
            "std" => Ok(Orientation::Std),
            _ => Err(DonaldsonError::InvalidOrientation(s.into())),
        }
    }
}

/// One generator per period: b_α (t = 0) or t_α (t = 3 irreducible,
/// t = 2 reducible).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    /// Index of the vertex in S_Γ.
    pub vertex: usize,
    pub rep: String,
    pub kind: QuatKind,
    pub top: bool,
    pub t: u8,
    /// j(α) for `Bar`, i(α) for `Std`; the filtration level mod 8.
    pub grading: u8,
}

impl Generator {
    pub fn name(&self) -> String {
        format!("{}_{}", if self.top { "t" } else { "b" }, self.rep)
    }
}

/// `from ↦ coeff · to`, landing `drop` filtration levels lower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub from: usize,
    pub to: usize,
    pub drop: i64,
    pub coeff: i64,
}

#[derive(Clone, Debug)]
pub struct DonaldsonModel {
    pub group: GroupId,
    pub orientation: Orientation,
    pub sgraph: Arc<SGraph>,
    /// The labels n_{αβ} in use (normally those of S_Γ).
    pub labels: BTreeMap<(usize, usize), i64>,
    pub generators: Vec<Generator>,
    pub differential: Vec<Term>,
    /// Right action of u (degree 3, same level).
    pub u_action: Vec<Term>,
}

impl DonaldsonModel {
    pub fn bottom(&self, vertex: usize) -> usize {
        self.generators.iter().position(|g| g.vertex == vertex && !g.top).expect("every vertex has b")
    }

    pub fn top(&self, vertex: usize) -> Option<usize> {
        self.generators.iter().position(|g| g.vertex == vertex && g.top)
    }

    pub fn label(&self, a: usize, b: usize) -> i64 {
        self.labels.get(&(a, b)).copied().unwrap_or(0)
    }

    /// Generator names at bidegree (s mod 8, t).
    pub fn at(&self, s: i64, t: u8) -> Vec<String> {
        let s = s.rem_euclid(8) as u8;
        self.generators.iter().filter(|g| g.grading == s && g.t == t).map(Generator::name).collect()
    }

    /// Components of the differential leaving column `s` (mod 8), grouped by
    /// the drop: (drop, matrix over the b-generators at s and the targets).
    pub fn arrows_from(&self, s: i64) -> Vec<Arrow> {
        let s8 = s.rem_euclid(8) as u8;
        let mut by_drop: BTreeMap<i64, Vec<Term>> = BTreeMap::new();
        for term in &self.differential {
            if self.generators[term.from].grading == s8 {
                by_drop.entry(term.drop).or_default().push(*term);
            }
        }
        // A column with sources but no targets still has a (zero) arrow.
        let sources: Vec<usize> =
            (0..self.generators.len()).filter(|&k| self.generators[k].grading == s8 && !self.generators[k].top).collect();
        if self.orientation == Orientation::Bar && by_drop.is_empty() && !sources.is_empty() {
            by_drop.insert(4, Vec::new());
        }
        by_drop
            .into_iter()
            .map(|(drop, terms)| {
                let target_level = (s - drop).rem_euclid(8) as u8;
                let targets: Vec<usize> = (0..self.generators.len())
                    .filter(|&k| {
                        let g = &self.generators[k];
                        g.grading == target_level && terms.iter().any(|t| t.to == k)
                    })
                    .collect();
                let coeffs = terms.iter().map(|t| t.coeff).collect();
                Arrow {
                    drop,
                    sources: sources.iter().map(|&k| self.generators[k].name()).collect(),
                    targets: targets.iter().map(|&k| self.generators[k].name()).collect(),
                    coeffs,
                }
            })
            .collect()
    }
}

/// A component ∂^r between two columns, as drawn in the bidegree figures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub drop: i64,
    pub sources: Vec<String>,
    pub targets: Vec<String>,
    /// Nonzero coefficients in source order ("(0)" when empty).
    pub coeffs: Vec<i64>,
}

impl Arrow {
    pub fn label(&self) -> String {
        if self.coeffs.is_empty() {
            "(0)".into()
        } else {
            format!("({})", self.coeffs.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
        }
    }
}

fn vertex_grading(s: &SGraph, v: usize, o: Orientation) -> u8 {
    match o {
        Orientation::Bar => s.vertices[v].j,
        Orientation::Std => s.vertices[v].i,
    }
}

pub fn build_model(g: GroupId, orientation: Orientation) -> Result<DonaldsonModel, DonaldsonError> {
    let s = s_graph(g)?;
    let labels = s.labels.clone();
    Ok(build_model_with_labels(s, orientation, labels))
}

/// The model with arbitrary labels n_{αβ} (e.g. sign-flipped) on the edges
/// of S_Γ.
pub fn build_model_with_labels(
    s: Arc<SGraph>,
    orientation: Orientation,
    labels: BTreeMap<(usize, usize), i64>,
) -> DonaldsonModel {
    let mut generators = Vec::new();
    for (v, vert) in s.vertices.iter().enumerate() {
        let grading = vertex_grading(&s, v, orientation);
        let base = Generator { vertex: v, rep: vert.rep.name.clone(), kind: vert.rep.kind, top: false, t: 0, grading };
        generators.push(base.clone());
        let t = match vert.rep.kind {
            QuatKind::Irreducible => 3,
            QuatKind::Reducible => 2,
            QuatKind::FullyReducible => continue,
        };
        generators.push(Generator { top: true, t, ..base });
    }
    let b = |v: usize| generators.iter().position(|x| x.vertex == v && !x.top).unwrap();
    let t = |v: usize| generators.iter().position(|x| x.vertex == v && x.top);
    let n = |a: usize, c: usize| labels.get(&(a, c)).copied().unwrap_or(0);
    let irr = |v: usize| s.vertices[v].rep.kind == QuatKind::Irreducible;

    let mut differential = Vec::new();
    match orientation {
        Orientation::Bar => {
            // ∂⁴(b_β) = Σ_{α irr} n_{αβ} t_α.
            for beta in 0..s.len() {
                for alpha in s.neighbors(beta).into_iter().filter(|&a| irr(a)) {
                    let c = n(alpha, beta);
                    if c != 0 {
                        differential.push(Term { from: b(beta), to: t(alpha).unwrap(), drop: 4, coeff: c });
                    }
                }
            }
        }
        Orientation::Std => {
            // Out of b_α, α irreducible: ∂¹ to b_η, ∂³ to t_λ, ∂⁴ to t_β.
            for alpha in (0..s.len()).filter(|&a| irr(a)) {
                for w in s.neighbors(alpha) {
                    let c = n(alpha, w);
                    if c == 0 {
                        continue;
                    }
                    let (to, drop) = match s.vertices[w].rep.kind {
                        QuatKind::FullyReducible => (b(w), 1),
                        QuatKind::Reducible => (t(w).unwrap(), 3),
                        QuatKind::Irreducible => (t(w).unwrap(), 4),
                    };
                    differential.push(Term { from: b(alpha), to, drop, coeff: c });
                }
            }
        }
    }
    for term in &differential {
        let (src, dst) = (&generators[term.from], &generators[term.to]);
        debug_assert_eq!((src.grading as i64 - term.drop).rem_euclid(8), dst.grading as i64);
        debug_assert_eq!(src.t as i64 - 1, dst.t as i64 - term.drop);
    }
    let u_action = (0..s.len())
        .filter(|&v| irr(v))
        .map(|v| Term { from: b(v), to: t(v).unwrap(), drop: 0, coeff: 1 })
        .collect();
    DonaldsonModel { group: s.group, orientation, sgraph: s.clone(), labels, generators, differential, u_action }
}
