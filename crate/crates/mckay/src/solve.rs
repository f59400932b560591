use exactmath::{rat, Field, SparseMat, Q};
use grouprep::{character_table, GroupId, VirtualRep};

use crate::graph::{mckay_graph, recognize_subgroup, McKayGraph};
use crate::McKayError;

/// ⌈a / b⌉ for b > 0.
fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// (2 − Q)·v, computed from the McKay adjacency.
pub fn apply_two_minus_q(m: &McKayGraph, v: &VirtualRep) -> VirtualRep {
    let n = m.len();
    VirtualRep((0..n).map(|i| 2 * v.0[i] - (0..n).map(|j| m.adjacency[i][j] * v.0[j]).sum::<i64>()).collect())
}

/// Minimal positive 𝓗 with (2 − Q)𝓗 = α − β.
pub fn solve_rep_equation(g: GroupId, alpha: &VirtualRep, beta: &VirtualRep) -> Result<VirtualRep, McKayError> {
    let m = mckay_graph(g)?;
    solve_with(&m, alpha, beta)
}

pub(crate) fn solve_with(m: &McKayGraph, alpha: &VirtualRep, beta: &VirtualRep) -> Result<VirtualRep, McKayError> {
    let n = m.len();
    let rhs = alpha.sub(beta);
    let unsolvable = |why: &str| McKayError::Unsolvable(format!("{}: {:?} − {:?}: {why}", m.group, alpha.0, beta.0));
    let mut trip = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let a = if i == j { 2 } else { 0 } - m.adjacency[i][j];
            if a != 0 {
                trip.push((i, j, Q::from_i64(a)));
            }
        }
    }
    let mat = SparseMat::from_triplets(n, n, trip);
    let b: Vec<Q> = rhs.0.iter().map(|&x| Q::from_i64(x)).collect();
    let x = mat.solve(&b).ok_or_else(|| unsolvable("not in the image of 2 − Q"))?;
    // The kernel is spanned by the regular representation (d_0 = 1):
    // normalize to x_0 = 0 and require integrality.
    let shift = x[0].clone();
    let mut h = Vec::with_capacity(n);
    for (i, xi) in x.iter().enumerate() {
        let v = xi - &(&shift * &Q::from_i64(m.dims[i]));
        if !v.is_integer() {
            return Err(unsolvable("no integral solution"));
        }
        h.push(exactmath::rat_to_i64(&v).ok_or_else(|| unsolvable("overflow"))?);
    }
    let t = (0..n).map(|i| ceil_div(-h[i], m.dims[i])).max().unwrap_or(0);
    for (i, hi) in h.iter_mut().enumerate() {
        *hi += t * m.dims[i];
    }
    if !h.contains(&0) {
        return Err(unsolvable("no minimal positive solution"));
    }
    let out = VirtualRep(h);
    if apply_two_minus_q(m, &out) != rhs {
        return Err(unsolvable("verification failed"));
    }
    Ok(out)
}

/// 𝓗 together with the subgroup Γ′ read off from its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSolution {
    pub h: VirtualRep,
    pub epsilon: i64,
    pub sub: GroupId,
    pub sub_order: u64,
}

impl EdgeSolution {
    /// 2·dim 𝓗 / |Γ′| as an exact rational.
    pub fn degree(&self) -> Q {
        rat(2 * self.epsilon, self.sub_order as i64)
    }
}

pub(crate) fn edge_solution(m: &McKayGraph, alpha: &VirtualRep, beta: &VirtualRep) -> Result<EdgeSolution, McKayError> {
    let h = solve_with(m, alpha, beta)?;
    let (sub, sub_order) = recognize_subgroup(&m.adjacency, &h.support())?;
    Ok(EdgeSolution { epsilon: h.epsilon(&m.dims), h, sub, sub_order })
}

/// Independent construction of 𝓗 for an adjacent pair: delete β's
/// vertices, take the component Δ containing α, identify Δ with the McKay
/// graph of Γ′ minus its trivial vertex by an isomorphism φ carrying Q′ to
/// α, and set 𝓗 = Σ dim S_j · R_φ(j).
pub fn graphical_solution(g: GroupId, alpha: &VirtualRep, beta: &VirtualRep) -> Result<(VirtualRep, GroupId), McKayError> {
    let m = mckay_graph(g)?;
    let removed = beta.support();
    let start = alpha.support();
    let comp = m.component_without(&start, &removed);
    let (sub, _) = recognize_subgroup(&m.adjacency, &comp)?;
    let ms = mckay_graph(sub)?;
    let qs = character_table(sub).q.clone();
    let dom: Vec<usize> = (1..ms.len()).collect();
    if dom.len() != comp.len() {
        return Err(McKayError::GraphShapeError(format!("component of size {} vs Δ of {sub}", comp.len())));
    }
    let phi = find_isomorphism(&ms, &dom, &qs.0, &m, &comp, &alpha.0)
        .ok_or_else(|| McKayError::GraphShapeError(format!("no isomorphism Δ_{sub} → component {comp:?}")))?;
    let mut h = VirtualRep::zero(m.len());
    for (k, &j) in dom.iter().enumerate() {
        h.0[phi[k]] += ms.dims[j];
    }
    Ok((h, sub))
}

/// Backtracking search for an adjacency-preserving bijection `dom → cod`
/// with `qmult[j] == amult[φ(j)]`.
fn find_isomorphism(
    src: &McKayGraph,
    dom: &[usize],
    qmult: &[i64],
    dst: &McKayGraph,
    cod: &[usize],
    amult: &[i64],
) -> Option<Vec<usize>> {
    // Visit the domain in BFS order so each new vertex has a mapped neighbor.
    let mut order: Vec<usize> = Vec::new();
    let mut seen = vec![false; dom.len()];
    for s in 0..dom.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        order.push(s);
        let mut i = order.len() - 1;
        while i < order.len() {
            let u = order[i];
            for (w, sw) in seen.iter_mut().enumerate() {
                if !*sw && src.adjacency[dom[u]][dom[w]] > 0 {
                    *sw = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let mut phi = vec![usize::MAX; dom.len()];
    let mut used = vec![false; cod.len()];

    fn rec(
        pos: usize,
        order: &[usize],
        phi: &mut [usize],
        used: &mut [bool],
        ctx: &(&McKayGraph, &[usize], &[i64], &McKayGraph, &[usize], &[i64]),
    ) -> bool {
        let (src, dom, qmult, dst, cod, amult) = *ctx;
        if pos == order.len() {
            return true;
        }
        let u = order[pos];
        for c in 0..cod.len() {
            if used[c] || qmult[dom[u]] != amult[cod[c]] {
                continue;
            }
            let ok = order[..pos].iter().all(|&w| {
                (src.adjacency[dom[u]][dom[w]] > 0) == (dst.adjacency[cod[c]][phi[w]] > 0)
            });
            if !ok {
                continue;
            }
            phi[u] = cod[c];
            used[c] = true;
            if rec(pos + 1, order, phi, used, ctx) {
                return true;
            }
            used[c] = false;
        }
        false
    }

    let ctx = (src, dom, qmult, dst, cod, amult);
    rec(0, &order, &mut phi, &mut used, &ctx).then_some(phi)
}
