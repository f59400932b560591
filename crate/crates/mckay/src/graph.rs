use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use grouprep::{character_table, q_tensor, GroupId};
use petgraph::graph::{NodeIndex, UnGraph};
use petgraph::visit::{Bfs, NodeFiltered};
use serde::{Deserialize, Serialize};

use crate::McKayError;

/// Simply-laced Dynkin type; `A(0)` stands for the empty graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dynkin {
    A(u32),
    D(u32),
    E(u32),
}

impl fmt::Display for Dynkin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dynkin::A(n) => write!(f, "A{n}"),
            Dynkin::D(n) => write!(f, "D{n}"),
            Dynkin::E(n) => write!(f, "E{n}"),
        }
    }
}

/// The McKay graph of Γ: irreducibles joined according to Q ⊗ R_i.
#[derive(Clone, Debug)]
pub struct McKayGraph {
    pub group: GroupId,
    pub names: Vec<String>,
    pub dims: Vec<i64>,
    /// a_ij = multiplicity of R_j in Q ⊗ R_i.
    pub adjacency: Vec<Vec<i64>>,
    /// Type of the graph with the trivial vertex removed; the McKay graph
    /// itself is the extended diagram of this type.
    pub dynkin: Dynkin,
}

impl McKayGraph {
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| j != i && self.adjacency[i][j] > 0).collect()
    }

    pub fn extended_name(&self) -> String {
        format!("~{}", self.dynkin)
    }

    /// DOT text with dimensions as vertex attributes and multiplicities
    /// as edge attributes.
    pub fn to_dot(&self) -> String {
        let mut s = format!("graph \"McKay_{}\" {{\n  type=\"{}\";\n", self.group, self.extended_name());
        for (k, name) in self.names.iter().enumerate() {
            s += &format!("  v{k} [label=\"{name}\", dim={}, trivial={}];\n", self.dims[k], k == 0);
        }
        for i in 0..self.len() {
            for j in i..self.len() {
                if self.adjacency[i][j] > 0 {
                    s += &format!("  v{i} -- v{j} [mult={}];\n", self.adjacency[i][j]);
                }
            }
        }
        s + "}\n"
    }

    pub(crate) fn petgraph(&self) -> UnGraph<usize, ()> {
        let mut g = UnGraph::new_undirected();
        let nodes: Vec<NodeIndex> = (0..self.len()).map(|i| g.add_node(i)).collect();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adjacency[i][j] > 0 {
                    g.add_edge(nodes[i], nodes[j], ());
                }
            }
        }
        g
    }

    /// Vertices reachable from `start` once `removed` is deleted.
    pub fn component_without(&self, start: &[usize], removed: &[usize]) -> Vec<usize> {
        let g = self.petgraph();
        let keep = |n: NodeIndex| !removed.contains(&n.index());
        let view = NodeFiltered::from_fn(&g, keep);
        let mut seen = vec![false; self.len()];
        for &s in start.iter().filter(|s| !removed.contains(s)) {
            let mut bfs = Bfs::new(&view, NodeIndex::new(s));
            while let Some(n) = bfs.next(&view) {
                seen[n.index()] = true;
            }
        }
        (0..self.len()).filter(|i| seen[*i]).collect()
    }
}

fn expected_dynkin(g: GroupId) -> Dynkin {
    match g {
        GroupId::Cyclic(l) => Dynkin::A(l - 1),
        GroupId::BinaryDihedral(n) => Dynkin::D(n + 2),
        GroupId::BinaryTetrahedral => Dynkin::E(6),
        GroupId::BinaryOctahedral => Dynkin::E(7),
        GroupId::BinaryIcosahedral => Dynkin::E(8),
    }
}

/// Build the McKay graph and check that it is the expected extended
/// Dynkin diagram with the dimensions as marks. Memoized.
pub fn mckay_graph(g: GroupId) -> Result<Arc<McKayGraph>, McKayError> {
    static CACHE: OnceLock<RwLock<HashMap<GroupId, Arc<McKayGraph>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.read().expect("cache lock").get(&g) {
        return Ok(m.clone());
    }
    let m = Arc::new(build_mckay_graph(g)?);
    cache.write().expect("cache lock").insert(g, m.clone());
    Ok(m)
}

fn build_mckay_graph(g: GroupId) -> Result<McKayGraph, McKayError> {
    let t = character_table(g);
    let n = t.len();
    let mut adjacency = Vec::with_capacity(n);
    for i in 0..n {
        adjacency.push(q_tensor(g, i)?.0);
    }
    let shape = |m: String| McKayError::GraphShapeError(format!("{g}: {m}"));
    for i in 0..n {
        for j in 0..n {
            if adjacency[i][j] != adjacency[j][i] {
                return Err(shape(format!("asymmetric at ({i},{j})")));
            }
        }
    }
    // Ã_0 (C_1) has a double loop and Ã_1 (C_2) a double edge; every other
    // McKay graph is simple.
    let degenerate = matches!(g, GroupId::Cyclic(1) | GroupId::Cyclic(2));
    for i in 0..n {
        for j in 0..n {
            let a = adjacency[i][j];
            let ok = if degenerate { a <= 2 } else if i == j { a == 0 } else { a <= 1 };
            if !ok {
                return Err(shape(format!("a[{i}][{j}] = {a}")));
            }
        }
    }
    let dims = t.dims();
    for i in 0..n {
        let s: i64 = (0..n).map(|j| adjacency[i][j] * dims[j]).sum();
        if s != 2 * dims[i] {
            return Err(shape(format!("dimensions are not marks at {}", t.irreps[i].name)));
        }
    }
    let names: Vec<String> = t.irreps.iter().map(|r| r.name.clone()).collect();
    let mut graph = McKayGraph { group: g, names, dims, adjacency, dynkin: Dynkin::A(0) };
    let rest: Vec<usize> = (1..n).collect();
    let found = if degenerate { Dynkin::A(n as u32 - 1) } else { recognize_dynkin(&graph.adjacency, &rest)? };
    let want = expected_dynkin(g);
    if found != want {
        return Err(shape(format!("found {found}, expected {want}")));
    }
    graph.dynkin = found;
    Ok(graph)
}

/// Identify the induced subgraph on `verts` as a connected simply-laced
/// Dynkin diagram.
pub fn recognize_dynkin(adj: &[Vec<i64>], verts: &[usize]) -> Result<Dynkin, McKayError> {
    let k = verts.len();
    let not = |m: &str| McKayError::NotDynkin(format!("{m} (vertices {verts:?})"));
    if k == 0 {
        return Ok(Dynkin::A(0));
    }
    let nbrs = |v: usize| -> Vec<usize> { verts.iter().copied().filter(|&w| w != v && adj[v][w] != 0).collect() };
    let mut edges = 0;
    for (a, &v) in verts.iter().enumerate() {
        if adj[v][v] != 0 {
            return Err(not("loop"));
        }
        for &w in &verts[a + 1..] {
            match adj[v][w] {
                0 => {}
                1 => edges += 1,
                _ => return Err(not("multiple edge")),
            }
        }
    }
    if edges != k - 1 {
        return Err(not("not a tree"));
    }
    // Connectedness: walk from the first vertex.
    let mut seen = vec![verts[0]];
    let mut i = 0;
    while i < seen.len() {
        for w in nbrs(seen[i]) {
            if !seen.contains(&w) {
                seen.push(w);
            }
        }
        i += 1;
    }
    if seen.len() != k {
        return Err(not("disconnected"));
    }
    let branch: Vec<usize> = verts.iter().copied().filter(|&v| nbrs(v).len() >= 3).collect();
    match branch.as_slice() {
        [] => Ok(Dynkin::A(k as u32)),
        [b] => {
            let b = *b;
            let ns = nbrs(b);
            if ns.len() != 3 {
                return Err(not("vertex of degree > 3"));
            }
            let mut arms: Vec<u32> = ns
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (b, start, 1);
                    loop {
                        let next: Vec<usize> = nbrs(cur).into_iter().filter(|&w| w != prev).collect();
                        match next.as_slice() {
                            [w] => {
                                prev = cur;
                                cur = *w;
                                len += 1;
                            }
                            _ => break len,
                        }
                    }
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, c] => Ok(Dynkin::D(c + 3)),
                [1, 2, 2] => Ok(Dynkin::E(6)),
                [1, 2, 3] => Ok(Dynkin::E(7)),
                [1, 2, 4] => Ok(Dynkin::E(8)),
                _ => Err(not("arm lengths are not of type D or E")),
            }
        }
        _ => Err(not("more than one branch vertex")),
    }
}

/// The finite subgroup of SU(2) whose McKay graph minus the trivial vertex
/// is the given Dynkin diagram, with its order.
pub fn recognize_subgroup(adj: &[Vec<i64>], verts: &[usize]) -> Result<(GroupId, u64), McKayError> {
    let g = match recognize_dynkin(adj, verts)? {
        Dynkin::A(0) => return Err(McKayError::NotDynkin("empty component".into())),
        Dynkin::A(n) => GroupId::Cyclic(n + 1),
        Dynkin::D(n) => GroupId::BinaryDihedral(n - 2),
        Dynkin::E(6) => GroupId::BinaryTetrahedral,
        Dynkin::E(7) => GroupId::BinaryOctahedral,
        Dynkin::E(_) => GroupId::BinaryIcosahedral,
    };
    Ok((g, g.order()))
}

/// Graph of ι-orbits of irreducibles.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    /// Each orbit lists one or two irreducible indices.
    pub orbits: Vec<Vec<usize>>,
    pub adjacency: Vec<Vec<bool>>,
    /// Orbits {ρ, ρ*} with ρ adjacent to ρ*.
    pub loops: Vec<bool>,
}

impl QuotientGraph {
    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbits.iter().position(|o| o.contains(&i)).expect("every vertex lies in an orbit")
    }

    pub fn edge_count(&self) -> usize {
        let n = self.orbits.len();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| self.adjacency[a][b]).count()
    }

    pub(crate) fn petgraph(&self) -> UnGraph<usize, ()> {
        let mut g = UnGraph::new_undirected();
        let nodes: Vec<NodeIndex> = (0..self.orbits.len()).map(|i| g.add_node(i)).collect();
        for a in 0..self.orbits.len() {
            for b in a + 1..self.orbits.len() {
                if self.adjacency[a][b] {
                    g.add_edge(nodes[a], nodes[b], ());
                }
            }
        }
        g
    }
}

pub fn quotient_graph(m: &McKayGraph, dual: &[usize]) -> QuotientGraph {
    let n = m.len();
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let j = dual[i];
        if j < i {
            continue;
        }
        orbits.push(if i == j { vec![i] } else { vec![i, j] });
    }
    let k = orbits.len();
    let mut adjacency = vec![vec![false; k]; k];
    let mut loops = vec![false; k];
    for a in 0..k {
        for b in 0..k {
            let touch = orbits[a].iter().any(|&x| orbits[b].iter().any(|&y| x != y && m.adjacency[x][y] > 0));
            if a == b {
                loops[a] = touch;
            } else {
                adjacency[a][b] = touch;
            }
        }
    }
    QuotientGraph { orbits, adjacency, loops }
}
