use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock, RwLock};

use exactmath::rat_to_i64;
use grouprep::{character_table, quaternionic_reps, GroupId, QuatKind, QuatRep};
use petgraph::algo::astar;
use petgraph::graph::{NodeIndex, UnGraph};
use serde::{Deserialize, Serialize};

use crate::graph::{mckay_graph, quotient_graph, McKayGraph, QuotientGraph};
use crate::solve::{edge_solution, graphical_solution};
use crate::McKayError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SVertex {
    pub rep: QuatRep,
    /// Grading for the orientation Ȳ_Γ, in {0, 4}.
    pub j: u8,
    /// Grading for Y_Γ, in Z/8.
    pub i: u8,
}

impl SVertex {
    pub fn name(&self) -> &str {
        &self.rep.name
    }

    pub fn is_irreducible(&self) -> bool {
        self.rep.kind == QuatKind::Irreducible
    }
}

/// The labeled graph S_Γ on the 1-dimensional quaternionic representations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SGraph {
    pub group: GroupId,
    pub vertices: Vec<SVertex>,
    /// Undirected edges (a, b) with a < b.
    pub edges: Vec<(usize, usize)>,
    /// n_{αβ} for α irreducible and β adjacent to α, keyed (α, β).
    pub labels: BTreeMap<(usize, usize), i64>,
}

impl SGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.rep.name == name)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, a: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(x, y)| if x == a { Some(y) } else if y == a { Some(x) } else { None })
            .collect();
        out.sort();
        out
    }

    /// n_{αβ}; zero unless α is irreducible and adjacent to β.
    pub fn label(&self, alpha: usize, beta: usize) -> i64 {
        self.labels.get(&(alpha, beta)).copied().unwrap_or(0)
    }

    /// Tree distances from `a`.
    pub fn distances(&self, a: usize) -> Vec<Option<usize>> {
        let mut d = vec![None; self.len()];
        d[a] = Some(0);
        let mut queue = vec![a];
        let mut k = 0;
        while k < queue.len() {
            let u = queue[k];
            for w in self.neighbors(u) {
                if d[w].is_none() {
                    d[w] = Some(d[u].unwrap() + 1);
                    queue.push(w);
                }
            }
            k += 1;
        }
        d
    }

    /// The unique path between two vertices of the tree.
    pub fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let d = self.distances(b);
        let mut path = vec![a];
        let mut cur = a;
        d[a]?;
        while cur != b {
            cur = self.neighbors(cur).into_iter().find(|&w| d[w] == Some(d[cur].unwrap() - 1))?;
            path.push(cur);
        }
        Some(path)
    }

    /// Edge label text as drawn: "(n_ab|n_ba)" when both ends are
    /// irreducible, the single label when one is, empty otherwise; the
    /// endpoint closer to θ comes first.
    pub fn edge_text(&self, a: usize, b: usize) -> String {
        let (x, y) = self.oriented(a, b);
        match (self.vertices[x].is_irreducible(), self.vertices[y].is_irreducible()) {
            (true, true) => format!("({}|{})", self.label(x, y), self.label(y, x)),
            (true, false) => self.label(x, y).to_string(),
            (false, true) => self.label(y, x).to_string(),
            (false, false) => String::new(),
        }
    }

    fn oriented(&self, a: usize, b: usize) -> (usize, usize) {
        let d = self.distances(0);
        if d[b] < d[a] {
            (b, a)
        } else {
            (a, b)
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph \"S_{}\" {{", self.group);
        for (k, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                s,
                "  v{k} [label=\"{}\", kind=\"{}\", j={}, i={}];",
                v.rep.name,
                v.rep.kind.short(),
                v.j,
                v.i
            );
        }
        for &(a, b) in &self.edges {
            let (x, y) = self.oriented(a, b);
            let _ = writeln!(
                s,
                "  v{x} -- v{y} [label=\"{}\", n_fwd={}, n_back={}];",
                self.edge_text(x, y),
                self.label(x, y),
                self.label(y, x)
            );
        }
        s.push_str("}\n");
        s
    }
}

/// Vertex and edge attributes recovered from DOT text written by
/// [`SGraph::to_dot`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DotGraph {
    /// (name, kind, j, i) per vertex.
    pub vertices: Vec<(String, String, u8, u8)>,
    /// (from, to, n_fwd, n_back) by vertex index.
    pub edges: Vec<(usize, usize, i64, i64)>,
}

fn dot_attrs(s: &str) -> BTreeMap<String, String> {
    let inner = s.split_once('[').and_then(|(_, r)| r.rsplit_once(']')).map(|(l, _)| l).unwrap_or("");
    let mut out = BTreeMap::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let Some((key, after)) = rest.split_once('=') else { break };
        let after = after.trim_start();
        let (val, tail) = if let Some(q) = after.strip_prefix('"') {
            let end = q.find('"').unwrap_or(q.len());
            (&q[..end], &q[(end + 1).min(q.len())..])
        } else {
            let end = after.find(',').unwrap_or(after.len());
            (&after[..end], &after[end..])
        };
        out.insert(key.trim().to_string(), val.trim().to_string());
        rest = tail.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
    }
    out
}

pub fn parse_dot(text: &str) -> Result<DotGraph, McKayError> {
    let bad = |l: &str| McKayError::GraphShapeError(format!("unparsable DOT line: {l}"));
    let vid = |t: &str| t.trim().strip_prefix('v').and_then(|n| n.parse::<usize>().ok());
    let mut g = DotGraph::default();
    for line in text.lines().map(str::trim) {
        if !line.starts_with('v') {
            continue;
        }
        let head = line.split('[').next().unwrap_or("");
        let a = dot_attrs(line);
        let num = |k: &str| a.get(k).and_then(|v| v.parse::<i64>().ok()).ok_or_else(|| bad(line));
        if let Some((x, y)) = head.split_once("--") {
            let (x, y) = (vid(x).ok_or_else(|| bad(line))?, vid(y).ok_or_else(|| bad(line))?);
            g.edges.push((x, y, num("n_fwd")?, num("n_back")?));
        } else {
            let k = vid(head).ok_or_else(|| bad(line))?;
            if k != g.vertices.len() {
                return Err(bad(line));
            }
            g.vertices.push((
                a.get("label").cloned().ok_or_else(|| bad(line))?,
                a.get("kind").cloned().ok_or_else(|| bad(line))?,
                num("j")? as u8,
                num("i")? as u8,
            ));
        }
    }
    Ok(g)
}

fn grading_i(kind: QuatKind, j: u8) -> u8 {
    let shift = match kind {
        QuatKind::Irreducible => 3,
        QuatKind::Reducible => 2,
        QuatKind::FullyReducible => 0,
    };
    (j + 8 - shift) % 8
}

/// Adjacency: a minimal path between the two orbits in the quotient graph
/// (loops ignored) that passes through no third quaternionic vertex.
fn s_adjacency(q: &QuotientGraph, orbit: &[usize]) -> Vec<(usize, usize)> {
    let pg: UnGraph<usize, ()> = q.petgraph();
    let mut edges = Vec::new();
    for a in 0..orbit.len() {
        for b in a + 1..orbit.len() {
            let goal = NodeIndex::new(orbit[b]);
            let Some((_, path)) = astar(&pg, NodeIndex::new(orbit[a]), |n| n == goal, |_| 1usize, |_| 0) else {
                continue;
            };
            let interior = &path[1..path.len() - 1];
            if interior.iter().all(|n| !orbit.contains(&n.index())) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// S_Γ with labels and gradings. Memoized.
pub fn s_graph(g: GroupId) -> Result<Arc<SGraph>, McKayError> {
    static CACHE: OnceLock<RwLock<HashMap<GroupId, Arc<SGraph>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.read().expect("cache lock").get(&g) {
        return Ok(s.clone());
    }
    let s = Arc::new(build_s_graph(g)?);
    cache.write().expect("cache lock").insert(g, s.clone());
    Ok(s)
}

fn build_s_graph(g: GroupId) -> Result<SGraph, McKayError> {
    let m = mckay_graph(g)?;
    let t = character_table(g);
    let q = quotient_graph(&m, &t.dual);
    let reps = quaternionic_reps(g);
    let orbit: Vec<usize> = reps.iter().map(|r| q.orbit_of(r.constituents[0])).collect();
    let edges = s_adjacency(&q, &orbit);

    let mut labels = BTreeMap::new();
    for &(a, b) in &edges {
        for (x, y) in [(a, b), (b, a)] {
            if reps[x].kind == QuatKind::Irreducible {
                labels.insert((x, y), edge_label(&m, &reps[x], &reps[y])?);
            }
        }
    }

    let mut graph = SGraph {
        group: g,
        vertices: reps.into_iter().map(|rep| SVertex { rep, j: 0, i: 0 }).collect(),
        edges,
        labels,
    };
    let dist = graph.distances(0);
    for (k, v) in graph.vertices.iter_mut().enumerate() {
        let d = dist[k].ok_or_else(|| McKayError::GraphShapeError(format!("S_{g} is disconnected at {}", v.rep.name)))?;
        v.j = ((4 * d) % 8) as u8;
        v.i = grading_i(v.rep.kind, v.j);
    }
    Ok(graph)
}

/// n_{βα} for β irreducible: 2·dim 𝓗/|Γ′| where (2 − Q)𝓗 = α − β, with 𝓗
/// cross-checked against the graphical construction.
fn edge_label(m: &McKayGraph, beta: &QuatRep, alpha: &QuatRep) -> Result<i64, McKayError> {
    let sol = edge_solution(m, &alpha.character, &beta.character)?;
    let (gh, gsub) = graphical_solution(m.group, &alpha.character, &beta.character)?;
    if gh != sol.h || gsub != sol.sub {
        return Err(McKayError::LabelMismatch(format!(
            "{}: n({}, {}): algebraic 𝓗 {:?} over {} but graphical 𝓗 {:?} over {gsub}",
            m.group, beta.name, alpha.name, sol.h.0, sol.sub, gh.0
        )));
    }
    let deg = sol.degree();
    if !deg.is_integer() {
        return Err(McKayError::LabelMismatch(format!(
            "{}: n({}, {}) = 2·{}/{} is not an integer",
            m.group, beta.name, alpha.name, sol.epsilon, sol.sub_order
        )));
    }
    Ok(rat_to_i64(&deg).expect("small label"))
}
