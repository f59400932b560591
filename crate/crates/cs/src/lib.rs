//! Chern–Simons invariants of the flat SU(2) connections over S³/Γ, read
//! off from the representation-ring equation (2 − Q)𝓗 = α − β, and the
//! matching classes in H⁴(Γ; Z).

use std::fmt;

use donaldson::Orientation;
use exactmath::{rat, rat_to_i64, SparseMat, Q};
use grouprep::{character_table, GroupId, QuatRep, VirtualRep};
use mckay::{mckay_graph, s_graph, solve_rep_equation, McKayError, SGraph};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CsError {
    #[error(transparent)]
    McKay(#[from] McKayError),
    #[error("{0} is not a vertex of S_Γ")]
    NotAVertex(String),
    #[error("α − β = {0:?} is not in the image of 2 − Q over Z")]
    Unsolvable(Vec<i64>),
}

/// An element of Q/Z as the reduced fraction num/den in [0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CsValue {
    pub num: i64,
    pub den: i64,
}

impl CsValue {
    /// num/den mod 1; den > 0.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den > 0, "denominator must be positive");
        let num = num.rem_euclid(den);
        let g = num.gcd(&den);
        CsValue { num: num / g, den: den / g }
    }

    pub fn zero() -> Self {
        CsValue { num: 0, den: 1 }
    }

    pub fn value(&self) -> Q {
        rat(self.num, self.den)
    }

    pub fn neg(&self) -> Self {
        CsValue::new(-self.num, self.den)
    }

    pub fn add(&self, o: &Self) -> Self {
        CsValue::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl fmt::Display for CsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// k·e_Γ ∈ H⁴(Γ; Z) ≅ Z/|Γ|, with e_Γ = c₂ of the inclusion Γ ⊂ SU(2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CohClass {
    pub residue: u64,
    pub modulus: u64,
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·e mod {}", self.residue, self.modulus)
    }
}

/// A finitely generated abelian group Z^r ⊕ ⊕ Z/t_i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: u32,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = (0..self.free_rank).map(|_| "Z".to_string()).collect();
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

fn vertex_of(s: &SGraph, alpha: &QuatRep) -> Result<usize, CsError> {
    s.vertices
        .iter()
        .position(|v| v.rep.character == alpha.character)
        .ok_or_else(|| CsError::NotAVertex(alpha.name.clone()))
}

/// The vertex carrying the canonical representation Q.
pub fn canonical_vertex(s: &SGraph) -> Option<usize> {
    let q = &character_table(s.group).q;
    s.vertices.iter().position(|v| &v.rep.character == q)
}

fn orient(v: CsValue, orientation: Orientation) -> CsValue {
    match orientation {
        Orientation::Std => v,
        Orientation::Bar => v.neg(),
    }
}

/// cs(b) − cs(a) for std, summed over the edges of the S_Γ path a → b.
pub fn cs_along_path(s: &SGraph, a: usize, b: usize) -> Result<CsValue, CsError> {
    let path = s.path(a, b).ok_or_else(|| CsError::NotAVertex(s.vertices[b].rep.name.clone()))?;
    let order = s.group.order() as i64;
    let dims = character_table(s.group).dims();
    let mut acc = CsValue::zero();
    for w in path.windows(2) {
        let (from, to) = (&s.vertices[w[0]].rep.character, &s.vertices[w[1]].rep.character);
        // cs(to) − cs(from) = ε(𝓗)/|Γ| for (2 − Q)𝓗 = to − from.
        let h = solve_rep_equation(s.group, to, from)?;
        acc = acc.add(&CsValue::new(h.epsilon(&dims), order));
    }
    Ok(acc)
}

/// cs at a vertex index of S_Γ.
pub fn chern_simons_at(s: &SGraph, v: usize, orientation: Orientation) -> Result<CsValue, CsError> {
    Ok(orient(cs_along_path(s, 0, v)?, orientation))
}

pub fn chern_simons(g: GroupId, alpha: &QuatRep, orientation: Orientation) -> Result<CsValue, CsError> {
    let s = s_graph(g)?;
    chern_simons_at(&s, vertex_of(&s, alpha)?, orientation)
}

/// Some integral 𝓗 with (2 − Q)𝓗 = α − β, normalized by a zero trivial
/// coefficient (the kernel of 2 − Q is spanned by the regular
/// representation, whose trivial coefficient is 1).
pub fn solve_any(g: GroupId, alpha: &VirtualRep, beta: &VirtualRep) -> Result<VirtualRep, CsError> {
    let m = mckay_graph(g)?;
    let n = m.len();
    let rhs = alpha.sub(beta);
    let mut trip = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let a = if i == j { 2 } else { 0 } - m.adjacency[i][j];
            if a != 0 {
                trip.push((i, j, Q::from_integer(a.into())));
            }
        }
    }
    let b: Vec<Q> = rhs.0.iter().map(|&x| Q::from_integer(x.into())).collect();
    let x = SparseMat::from_triplets(n, n, trip).solve(&b).ok_or_else(|| CsError::Unsolvable(rhs.0.clone()))?;
    let h: Option<Vec<i64>> =
        x.iter().enumerate().map(|(i, xi)| rat_to_i64(&(xi - &x[0] * Q::from_integer(m.dims[i].into())))).collect();
    h.map(VirtualRep).ok_or(CsError::Unsolvable(rhs.0))
}

/// cs(α) − cs(β) for std, from one direct solve.
pub fn cs_direct(g: GroupId, alpha: &VirtualRep, beta: &VirtualRep) -> Result<CsValue, CsError> {
    let h = solve_any(g, alpha, beta)?;
    let dims = character_table(g).dims();
    Ok(CsValue::new(h.epsilon(&dims), g.order() as i64))
}

/// c₂(ρ_α) = k·e_Γ with k/|Γ| ≡ −cs(α) for std.
pub fn c2_class(g: GroupId, alpha: &QuatRep) -> Result<CohClass, CsError> {
    let cs = chern_simons(g, alpha, Orientation::Std)?;
    Ok(class_of(g, &cs))
}

fn class_of(g: GroupId, cs: &CsValue) -> CohClass {
    let order = g.order() as i64;
    debug_assert_eq!(order % cs.den, 0);
    let k = (-cs.num * (order / cs.den)).rem_euclid(order);
    CohClass { residue: k as u64, modulus: order as u64 }
}

/// H^i(Γ; Z): Z, then 0, Γ^ab, 0, Z/|Γ| with period 4.
pub fn group_cohomology(g: GroupId, i: u32) -> AbelianGroup {
    match i {
        0 => AbelianGroup { free_rank: 1, torsion: Vec::new() },
        _ if i % 2 == 1 => AbelianGroup::zero(),
        _ if i % 4 == 2 => AbelianGroup { free_rank: 0, torsion: g.abelianization() },
        _ => AbelianGroup { free_rank: 0, torsion: vec![g.order()] },
    }
}

/// One flat connection with its invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatConnection {
    pub vertex: String,
    pub kind: String,
    pub cs: CsValue,
    pub c2: CohClass,
}

/// Every vertex of S_Γ with cs in the given orientation and its c₂ class.
pub fn flat_connections(g: GroupId, orientation: Orientation) -> Result<Vec<FlatConnection>, CsError> {
    let s = s_graph(g)?;
    (0..s.len())
        .map(|v| {
            let std = chern_simons_at(&s, v, Orientation::Std)?;
            let vert = &s.vertices[v];
            Ok(FlatConnection {
                vertex: vert.rep.name.clone(),
                kind: vert.rep.kind.short().to_string(),
                c2: class_of(g, &std),
                cs: orient(std, orientation),
            })
        })
        .collect()
}
