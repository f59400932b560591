//! Finite subgroups of SU(2): character tables, tensor products,
//! Frobenius–Schur types and the 1-dimensional quaternionic representations.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use exactmath::{cyclo_inner, rat_to_i64, Cyclo, ExactError, Q};
use serde::{Deserialize, Serialize};

mod group;
mod tables;

pub use group::GroupId;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error(transparent)]
    NonRationalResult(#[from] ExactError),
    #[error("decomposition failure in {group}: {detail}")]
    DecompositionFailure { group: String, detail: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepType {
    Real,
    Complex,
    Quaternionic,
}

impl RepType {
    pub fn indicator(self) -> i8 {
        match self {
            RepType::Real => 1,
            RepType::Complex => 0,
            RepType::Quaternionic => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            RepType::Real => "R",
            RepType::Complex => "C",
            RepType::Quaternionic => "H",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub label: String,
    pub representative: String,
    pub size: u64,
    /// Index of the class containing the squares of this class.
    pub square: usize,
}

#[derive(Clone, Debug)]
pub struct Irrep {
    pub name: String,
    pub dim: u32,
    pub ty: RepType,
    pub values: Vec<Cyclo>,
}

#[derive(Clone, Debug)]
pub struct CharTable {
    pub group: GroupId,
    pub classes: Vec<ConjClass>,
    pub irreps: Vec<Irrep>,
    /// Multiplicities of the defining 2-dimensional representation Q.
    pub q: VirtualRep,
    /// Index of Q when it is irreducible (every non-cyclic group).
    pub q_index: Option<usize>,
    /// The dual involution on irreducible indices.
    pub dual: Vec<usize>,
}

impl CharTable {
    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn class_sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn dims(&self) -> Vec<i64> {
        self.irreps.iter().map(|r| r.dim as i64).collect()
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// Character values of a virtual representation.
    pub fn character_of(&self, v: &VirtualRep) -> Vec<Cyclo> {
        let n = self.group.cyclotomic_order();
        (0..self.classes.len())
            .map(|c| {
                v.0.iter().zip(&self.irreps).fold(Cyclo::zero(n), |acc, (m, r)| {
                    acc + r.values[c].scale(&Q::from_integer((*m).into()))
                })
            })
            .collect()
    }

    pub fn inner(&self, a: &[Cyclo], b: &[Cyclo]) -> Result<Q, ExactError> {
        cyclo_inner(a, b, &self.class_sizes(), self.order())
    }

    /// Multiplicity vector of an arbitrary character, verified by re-summation.
    pub fn decompose(&self, chi: &[Cyclo]) -> Result<VirtualRep, GroupError> {
        let fail = |detail: String| GroupError::DecompositionFailure { group: self.group.to_string(), detail };
        let mut mult = Vec::with_capacity(self.len());
        for r in &self.irreps {
            let m = self.inner(chi, &r.values)?;
            let m = rat_to_i64(&m).ok_or_else(|| fail(format!("multiplicity of {} is {m}", r.name)))?;
            if m < 0 {
                return Err(fail(format!("negative multiplicity of {}", r.name)));
            }
            mult.push(m);
        }
        let v = VirtualRep(mult);
        if self.character_of(&v) != chi {
            return Err(fail("multiplicities do not reproduce the character".into()));
        }
        Ok(v)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.irreps.iter().position(|r| r.name == name)
    }
}

/// Element of the representation ring, as integer multiplicities over the
/// irreducible characters in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VirtualRep(pub Vec<i64>);

impl VirtualRep {
    pub fn zero(len: usize) -> Self {
        VirtualRep(vec![0; len])
    }

    pub fn basis(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[i] = 1;
        v
    }

    pub fn add(&self, o: &Self) -> Self {
        VirtualRep(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        VirtualRep(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        VirtualRep(self.0.iter().map(|a| a * k).collect())
    }

    /// Complex dimension: sum of multiplicity times dimension.
    pub fn epsilon(&self, dims: &[i64]) -> i64 {
        self.0.iter().zip(dims).map(|(a, d)| a * d).sum()
    }

    pub fn is_actual(&self) -> bool {
        self.0.iter().all(|a| *a >= 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|i| self.0[*i] != 0).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuatKind {
    FullyReducible,
    Reducible,
    Irreducible,
}

impl QuatKind {
    pub fn short(self) -> &'static str {
        match self {
            QuatKind::FullyReducible => "f.red",
            QuatKind::Reducible => "red",
            QuatKind::Irreducible => "irr",
        }
    }
}

/// A 1-dimensional quaternionic representation (a flat SU(2) connection).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuatRep {
    pub name: String,
    pub kind: QuatKind,
    pub character: VirtualRep,
    /// Irreducible constituents (one index, or the pair rho, rho*).
    pub constituents: Vec<usize>,
}

fn cache() -> &'static RwLock<HashMap<GroupId, Arc<CharTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<GroupId, Arc<CharTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The character table of `g`, memoized.
pub fn character_table(g: GroupId) -> Arc<CharTable> {
    if let Some(t) = cache().read().unwrap().get(&g) {
        return t.clone();
    }
    let t = Arc::new(build_table(g));
    cache().write().unwrap().entry(g).or_insert(t).clone()
}

fn build_table(g: GroupId) -> CharTable {
    let raw = tables::raw_table(g);
    let irreps: Vec<Irrep> = raw
        .irreps
        .into_iter()
        .map(|r| {
            let dim = r.values[0].to_rational().ok().and_then(|q| rat_to_i64(&q)).expect("integral dimension") as u32;
            Irrep { name: r.name, dim, ty: r.ty, values: r.values }
        })
        .collect();
    let classes: Vec<ConjClass> = raw
        .classes
        .into_iter()
        .map(|c| ConjClass { label: c.label, representative: c.rep, size: c.size, square: c.square })
        .collect();
    let dual = (0..irreps.len())
        .map(|i| {
            let conj: Vec<Cyclo> = irreps[i].values.iter().map(|v| v.conj()).collect();
            irreps.iter().position(|r| r.values == conj).expect("table closed under duals")
        })
        .collect();
    let n = irreps.len();
    let q = match (g, raw.q_index) {
        (_, Some(i)) => VirtualRep::basis(n, i),
        (GroupId::Cyclic(l), None) => {
            let l = l as usize;
            VirtualRep::basis(n, 1 % l).add(&VirtualRep::basis(n, (l - 1) % l))
        }
        _ => unreachable!("non-cyclic groups have an irreducible Q"),
    };
    CharTable { group: g, classes, irreps, q, q_index: raw.q_index, dual }
}

/// Frobenius–Schur indicator (1/|G|) sum_g chi(g^2).
pub fn fs_indicator(g: GroupId, i: usize) -> Result<i8, GroupError> {
    let t = character_table(g);
    let n = g.cyclotomic_order();
    let mut acc = Cyclo::zero(n);
    for c in &t.classes {
        acc = acc + t.irreps[i].values[c.square].scale(&Q::from_integer((c.size as i64).into()));
    }
    let v = acc.to_rational()? / Q::from_integer((g.order() as i64).into());
    match rat_to_i64(&v) {
        Some(x) if (-1..=1).contains(&x) => Ok(x as i8),
        _ => Err(GroupError::DecompositionFailure { group: g.to_string(), detail: format!("indicator {v}") }),
    }
}

/// Multiplicities of the irreducibles in R_i ⊗ R_j.
pub fn tensor_decompose(g: GroupId, i: usize, j: usize) -> Result<VirtualRep, GroupError> {
    let t = character_table(g);
    let prod: Vec<Cyclo> = t.irreps[i].values.iter().zip(&t.irreps[j].values).map(|(a, b)| a * b).collect();
    t.decompose(&prod)
}

/// Multiplicities of the irreducibles in Q ⊗ R_i (a row of the McKay matrix).
pub fn q_tensor(g: GroupId, i: usize) -> Result<VirtualRep, GroupError> {
    let t = character_table(g);
    let q = t.character_of(&t.q);
    let prod: Vec<Cyclo> = q.iter().zip(&t.irreps[i].values).map(|(a, b)| a * b).collect();
    t.decompose(&prod)
}

/// The 1-dimensional quaternionic representations, θ first.
pub fn quaternionic_reps(g: GroupId) -> Vec<QuatRep> {
    let t = character_table(g);
    let n = t.len();
    let fred = |name: &str, i: usize| QuatRep {
        name: name.into(),
        kind: QuatKind::FullyReducible,
        character: VirtualRep::basis(n, i).scale(2),
        constituents: vec![i],
    };
    let red = |name: &str, i: usize| {
        let j = t.dual[i];
        QuatRep {
            name: name.into(),
            kind: QuatKind::Reducible,
            character: VirtualRep::basis(n, i).add(&VirtualRep::basis(n, j)),
            constituents: vec![i, j],
        }
    };
    let irr = |name: &str, i: usize| QuatRep {
        name: name.into(),
        kind: QuatKind::Irreducible,
        character: VirtualRep::basis(n, i),
        constituents: vec![i],
    };
    let mut out = vec![fred("θ", 0)];
    match g {
        GroupId::Cyclic(l) => {
            let l = l as usize;
            if l.is_multiple_of(2) {
                out.push(fred("η", l / 2));
            }
            for k in (1..l).take_while(|k| 2 * k < l) {
                out.push(red(&format!("λ{k}"), k));
            }
        }
        GroupId::BinaryDihedral(m) => {
            let m = m as usize;
            // Indices: ρ0..ρ3 = 0..3, τ_k = 3 + k.
            if m.is_multiple_of(2) {
                out.push(fred("η1", 1));
                out.push(fred("η2", 2));
                out.push(fred("η3", 3));
                for k in 1..=m / 2 {
                    out.push(irr(&format!("α{k}"), 3 + 2 * k - 1));
                }
            } else {
                out.push(fred("η", 1));
                for k in 1..=(m - 1) / 2 {
                    out.push(irr(&format!("α{k}"), 3 + 2 * k - 1));
                }
                out.push(red("λ", 2));
            }
        }
        GroupId::BinaryTetrahedral => {
            out.push(irr("α", 5));
            out.push(red("λ", 1));
        }
        GroupId::BinaryOctahedral => {
            out.push(irr("α", 3));
            out.push(irr("β", 4));
            out.push(fred("η", 1));
        }
        GroupId::BinaryIcosahedral => {
            out.push(irr("α", 1));
            out.push(irr("β", 2));
        }
    }
    out
}
