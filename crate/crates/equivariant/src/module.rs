use std::collections::BTreeMap;
use std::fmt;

use donaldson::IntMat;
use serde::{Deserialize, Serialize};

use crate::UComplex;

/// How the elements of a family are indexed and how U moves them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    /// x^k in degree offset + step·k, k ≥ 0; U lowers k by 4/step.
    Up { step: i64 },
    /// x^k in degree offset − step·k, k ≥ 0; U raises k by 4/step.
    Down { step: i64 },
    /// x^k in degree offset − step·k, k ∈ Z; U raises k by 4/step.
    Laurent { step: i64 },
    /// One class in degree offset, killed by U.
    Single,
}

/// A generator family placed at filtration level ≡ `level` (mod 8).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    /// Display name of the index-0 element, e.g. "V_θ^0" or "3U_θ^0−Z_λ^1".
    pub name: String,
    /// Symbol used for the powers, e.g. "V_θ".
    pub symbol: String,
    pub level: i64,
    /// Degree of the index-0 element minus its level.
    pub offset: i64,
    pub shape: Shape,
}

impl Family {
    fn degree(&self, level: i64, k: i64) -> i64 {
        level
            + self.offset
            + match self.shape {
                Shape::Up { step } => step * k,
                Shape::Down { step } | Shape::Laurent { step } => -step * k,
                Shape::Single => 0,
            }
    }

    /// Indices k with the element in degree n, if any.
    fn index_in(&self, level: i64, n: i64) -> Option<i64> {
        let delta = n - level - self.offset;
        let k = match self.shape {
            Shape::Up { step } => (delta % step == 0 && delta >= 0).then(|| delta / step),
            Shape::Down { step } => (delta % step == 0 && delta <= 0).then(|| -delta / step),
            Shape::Laurent { step } => (delta % step == 0).then(|| -delta / step),
            Shape::Single => (delta == 0).then_some(0),
        }?;
        Some(k)
    }

    fn u_index(&self, k: i64) -> Option<i64> {
        match self.shape {
            Shape::Up { step } => (k - 4 / step >= 0).then(|| k - 4 / step),
            Shape::Down { step } | Shape::Laurent { step } => Some(k + 4 / step),
            Shape::Single => None,
        }
    }
}

/// An extra U-term: the index-0 element of `from` at level L picks up
/// coeff × (index-0 element of `to` at level L − drop).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correction {
    pub from: usize,
    pub to: usize,
    pub drop: i64,
    pub coeff: i64,
}

/// How copies of the families over the periods are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Periodicity {
    /// X^{Π,8}: product over s → −∞ of X[8s].
    ProductUp,
    /// X^{⊕,8}.
    Sum,
    /// X^{Π∞,8}: product over s → ∞.
    ProductDown,
    /// A single copy at level 0.
    Finite,
}

impl fmt::Display for Periodicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Periodicity::ProductUp => "Π,8",
            Periodicity::Sum => "⊕,8",
            Periodicity::ProductDown => "Π∞,8",
            Periodicity::Finite => "finite",
        })
    }
}

/// A graded R[U]-module given by generator families and U-rules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedModule {
    pub periodicity: Periodicity,
    pub families: Vec<Family>,
    pub corrections: Vec<Correction>,
}

impl PresentedModule {
    pub fn zero(periodicity: Periodicity) -> Self {
        PresentedModule { periodicity, families: Vec::new(), corrections: Vec::new() }
    }

    fn levels(&self, f: &Family, q: i64, p: i64) -> Vec<i64> {
        match self.periodicity {
            Periodicity::Finite => vec![f.level].into_iter().filter(|&l| q < l && l <= p).collect(),
            _ => (q + 1..=p).filter(|l| (l - f.level).rem_euclid(8) == 0).collect(),
        }
    }

    /// The copies at levels (q, p], degrees [lo, hi], as a complex with
    /// zero differential. U-images at levels ≤ q are dropped.
    pub fn materialize(&self, q: i64, p: i64, lo: i64, hi: i64) -> UComplex {
        let mut cells: BTreeMap<i64, Vec<(usize, i64, i64)>> = BTreeMap::new();
        for (fi, f) in self.families.iter().enumerate() {
            for l in self.levels(f, q, p) {
                for n in lo..=hi {
                    if let Some(k) = f.index_in(l, n) {
                        cells.entry(n).or_default().push((fi, l, k));
                    }
                }
            }
        }
        for n in lo..=hi {
            cells.entry(n).or_default();
        }
        let index: BTreeMap<(usize, i64, i64), (i64, usize)> = cells
            .iter()
            .flat_map(|(&n, v)| v.iter().enumerate().map(move |(i, &c)| (c, (n, i))))
            .collect();
        let mut u = BTreeMap::new();
        for (&n, v) in &cells {
            if n - 4 < lo {
                continue;
            }
            let mut entries = Vec::new();
            for (col, &(fi, l, k)) in v.iter().enumerate() {
                let f = &self.families[fi];
                if let Some(k2) = f.u_index(k) {
                    if let Some(&(_, row)) = index.get(&(fi, l, k2)) {
                        entries.push((row, col, 1));
                    }
                }
                if k == 0 {
                    for c in self.corrections.iter().filter(|c| c.from == fi) {
                        if let Some(&(tn, row)) = index.get(&(c.to, l - c.drop, 0)) {
                            debug_assert_eq!(tn, n - 4);
                            entries.push((row, col, c.coeff));
                        }
                    }
                }
            }
            if !entries.is_empty() {
                u.insert(n, IntMat::from_entries(cells[&(n - 4)].len(), v.len(), entries));
            }
        }
        let basis = cells
            .iter()
            .map(|(&n, v)| {
                let names = v.iter().map(|&(fi, l, k)| format!("{}^{}[{}]", self.families[fi].symbol, k, l)).collect();
                (n, names)
            })
            .collect();
        UComplex { range: (lo - 1, hi + 1), basis, d: BTreeMap::new(), u }
    }

    /// Degrees (relative to level) of all index-0 elements, for parity
    /// arguments.
    pub fn generator_degrees(&self) -> Vec<i64> {
        self.families.iter().map(|f| f.level + f.offset).collect()
    }

    /// Whether every element sits in even degree.
    pub fn is_even(&self) -> bool {
        self.families.iter().all(|f| {
            (f.level + f.offset).rem_euclid(2) == 0
                && match f.shape {
                    Shape::Up { step } | Shape::Down { step } | Shape::Laurent { step } => step % 2 == 0,
                    Shape::Single => true,
                }
        })
    }

    pub fn family_degree(&self, fi: usize, level: i64, k: i64) -> i64 {
        self.families[fi].degree(level, k)
    }
}

impl fmt::Display for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .families
            .iter()
            .map(|fam| {
                let body = match fam.shape {
                    Shape::Up { .. } | Shape::Down { .. } => format!("R[{}]", fam.symbol),
                    Shape::Laurent { .. } => format!("R[{0},{0}⁻¹]", fam.symbol),
                    Shape::Single => format!("R·{}", fam.name),
                };
                let shift = fam.level + fam.offset;
                if shift == 0 {
                    body
                } else {
                    format!("{body}[{shift}]")
                }
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" ⊕ ") };
        match self.periodicity {
            Periodicity::Finite => write!(f, "{body}"),
            p => write!(f, "({body})^{{{p}}}"),
        }
    }
}
