//! Simple undirected graphs with string vertex ids and a canonical JSON form.
//!
//! Vertices are opaque strings. Serialisation always emits vertices sorted
//! and edges as sorted pairs in lexicographic order, so equal graphs have
//! byte-identical JSON. Internally vertices are dense indices; algorithms
//! work on indices and translate back at the boundary.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::{input_err, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    verts: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    /// Builds a graph from vertex and edge lists.
    ///
    /// Rejects duplicate vertices, self-loops and edges with unknown
    /// endpoints. A repeated edge is collapsed (edges form a set).
    pub fn new<I, J, S, T>(vertices: I, edges: J) -> Result<Graph>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = (T, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let mut verts: Vec<String> = vertices.into_iter().map(Into::into).collect();
        verts.sort();
        if let Some(w) = verts.windows(2).find(|w| w[0] == w[1]) {
            return input_err(format!("duplicate vertex {:?}", w[0]));
        }
        let index: BTreeMap<String, usize> =
            verts.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut adj = vec![BTreeSet::new(); verts.len()];
        for (u, v) in edges {
            let (u, v) = (u.into(), v.into());
            let (Some(&iu), Some(&iv)) = (index.get(&u), index.get(&v)) else {
                return input_err(format!("edge ({u:?}, {v:?}) has an unknown endpoint"));
            };
            if iu == iv {
                return input_err(format!("self-loop at {u:?}"));
            }
            adj[iu].insert(iv);
            adj[iv].insert(iu);
        }
        Ok(Graph { verts, index, adj })
    }

    /// Graph with no vertices.
    pub fn empty() -> Graph {
        Graph { verts: Vec::new(), index: BTreeMap::new(), adj: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|n| n.len()).sum::<usize>() / 2
    }

    /// Vertex names in sorted order; index `i` here is the internal id.
    pub fn vertices(&self) -> &[String] {
        &self.verts
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.index.contains_key(v)
    }

    pub fn idx(&self, v: &str) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Internal index of `v`, or an input error naming it.
    pub fn idx_of(&self, v: &str) -> Result<usize> {
        self.idx(v).ok_or_else(|| crate::Error::Input(format!("unknown vertex {v:?}")))
    }

    pub fn name(&self, i: usize) -> &str {
        &self.verts[i]
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.idx(u), self.idx(v)) {
            (Some(iu), Some(iv)) => self.adj[iu].contains(&iv),
            _ => false,
        }
    }

    pub fn has_edge_idx(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors_idx(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().copied()
    }

    pub fn degree_idx(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Edges as sorted name pairs, lexicographically ordered.
    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.verts.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((self.verts[u].clone(), self.verts[v].clone()));
                }
            }
        }
        out.sort();
        out
    }

    /// Edges as index pairs `(u, v)` with `u < v`.
    pub fn edges_idx(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.verts.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Induced subgraph on the given vertex set.
    pub fn induced(&self, keep: &BTreeSet<String>) -> Result<Graph> {
        for v in keep {
            self.idx_of(v)?;
        }
        let edges = self
            .edges()
            .into_iter()
            .filter(|(u, v)| keep.contains(u) && keep.contains(v));
        Graph::new(keep.iter().cloned(), edges)
    }

    /// BFS distances from `source` (indices; `None` = unreachable).
    pub fn bfs_idx(&self, source: usize) -> Vec<Option<u64>> {
        let mut dist = vec![None; self.verts.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in self.neighbors_idx(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        match self.verts.len() {
            0 | 1 => true,
            _ => self.bfs_idx(0).iter().all(|d| d.is_some()),
        }
    }

    /// Largest vertex degree (0 for the empty graph).
    pub fn max_degree(&self) -> u64 {
        self.adj.iter().map(|n| n.len() as u64).max().unwrap_or(0)
    }

    /// Degeneracy via repeated minimum-degree removal, smallest id first on
    /// ties.
    pub fn degeneracy(&self) -> u64 {
        let n = self.verts.len();
        let mut deg: Vec<usize> = (0..n).map(|i| self.adj[i].len()).collect();
        let mut alive = vec![true; n];
        let mut best = 0u64;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&i| alive[i])
                .min_by_key(|&i| (deg[i], i))
                .unwrap();
            best = best.max(deg[v] as u64);
            alive[v] = false;
            for u in self.neighbors_idx(v) {
                if alive[u] {
                    deg[u] -= 1;
                }
            }
        }
        best
    }
}

/// Validates that `order` lists every vertex of `g` exactly once and
/// returns each vertex's position, indexed by internal id.
pub(crate) fn order_positions(g: &Graph, order: &[String]) -> Result<Vec<usize>> {
    if order.len() != g.vertex_count() {
        return Err(crate::Error::Precondition(format!(
            "order lists {} vertices, graph has {}",
            order.len(),
            g.vertex_count()
        )));
    }
    let mut pos = vec![usize::MAX; g.vertex_count()];
    for (p, v) in order.iter().enumerate() {
        let i = g.idx(v).ok_or_else(|| {
            crate::Error::Precondition(format!("order lists unknown vertex {v:?}"))
        })?;
        if pos[i] != usize::MAX {
            return Err(crate::Error::Precondition(format!("order repeats vertex {v:?}")));
        }
        pos[i] = p;
    }
    Ok(pos)
}

/// BFS distance table from one source, in name space.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DistanceTable {
    pub source: String,
    pub dist: BTreeMap<String, Option<u64>>,
}

/// Single-source BFS distances; errors if `source` is not a vertex.
pub fn bfs_distances(g: &Graph, source: &str) -> Result<DistanceTable> {
    let s = g.idx_of(source)?;
    let dist = g
        .bfs_idx(s)
        .into_iter()
        .enumerate()
        .map(|(i, d)| (g.name(i).to_string(), d))
        .collect();
    Ok(DistanceTable { source: source.to_string(), dist })
}

/// Minimum eccentricity. `None` when the graph is disconnected or empty.
pub fn radius(g: &Graph) -> Option<u64> {
    let n = g.vertex_count();
    if n == 0 {
        return None;
    }
    let mut best: Option<u64> = None;
    for v in 0..n {
        let mut ecc = 0u64;
        for d in g.bfs_idx(v) {
            ecc = ecc.max(d?);
        }
        best = Some(best.map_or(ecc, |b: u64| b.min(ecc)));
    }
    best
}

/// `g^k`: same vertices, an edge wherever the distance in `g` is in `1..=k`.
pub fn graph_power(g: &Graph, k: u64) -> Result<Graph> {
    if k == 0 {
        return input_err("graph power requires k >= 1");
    }
    let n = g.vertex_count();
    let mut edges = Vec::new();
    for u in 0..n {
        for (v, d) in g.bfs_idx(u).into_iter().enumerate() {
            if u < v {
                if let Some(d) = d {
                    if (1..=k).contains(&d) {
                        edges.push((g.name(u).to_string(), g.name(v).to_string()));
                    }
                }
            }
        }
    }
    Graph::new(g.vertices().to_vec(), edges)
}

/// `g^k` extended to `k = 0` (the edgeless graph on the same vertices).
/// Kept separate because the public power operation rejects `k = 0`.
pub fn graph_power_or_edgeless(g: &Graph, k: u64) -> Graph {
    if k == 0 {
        Graph::new(g.vertices().to_vec(), Vec::<(String, String)>::new()).unwrap()
    } else {
        graph_power(g, k).unwrap()
    }
}

/// Ball of radius `r` around `v` (always contains `v`).
pub fn ball_idx(g: &Graph, v: usize, r: u64) -> BTreeSet<usize> {
    g.bfs_idx(v)
        .into_iter()
        .enumerate()
        .filter(|(_, d)| matches!(d, Some(d) if *d <= r))
        .map(|(i, _)| i)
        .collect()
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr { vertices: self.verts.clone(), edges: self.edges() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Graph, D::Error> {
        let repr = GraphRepr::deserialize(de)?;
        Graph::new(repr.vertices, repr.edges).map_err(|e| D::Error::custom(e.to_string()))
    }
}
