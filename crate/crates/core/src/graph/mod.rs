//! Simple graphs on dense vertex indices, with the invariants the rest of
//! the crate quantifies over.

mod iso;
mod morphism;

pub use iso::{are_isomorphic, are_isomorphic_capped};
pub use morphism::{GraphMorphism, Injection};

use std::collections::VecDeque;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An immutable finite simple graph.
///
/// Vertices are `0..n`. Edges are stored as `(u, v)` with `u < v`, sorted
/// lexicographically; every deterministic construction in the crate refers
/// to this canonical edge order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, normalizing edge orientation and order.
    ///
    /// Rejects self-loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u},{v}}} has an endpoint outside 0..{n}"
                )));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {{{},{}}}",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_canonical(n, canon))
    }

    /// Builds a graph from edges already known to be canonical.
    pub(crate) fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// Builds a graph from edges that may repeat; duplicates are merged.
    pub(crate) fn from_edges_dedup(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut canon: Vec<_> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        canon.sort_unstable();
        canon.dedup();
        Self::from_canonical(n, canon)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_canonical(n, edges)
    }

    /// Cycle on `n ≥ 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Path with `n` vertices.
    pub fn path(n: usize) -> Self {
        Self::from_canonical(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    /// `K_{a,b}` with the part of size `a` on vertices `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect();
        Self::from_canonical(a + b, edges)
    }

    /// Star `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Self {
        Self::complete_bipartite(1, k)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of edge `{u, v}` in canonical order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let histogram: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        DegreeProfile {
            min: histogram.iter().copied().min(),
            max: histogram.iter().copied().max(),
            histogram,
        }
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Number of connected components (0 for the graph with no vertices).
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Diameter and girth.
    ///
    /// The diameter of a disconnected graph and the girth of a forest are
    /// [`Extent::Infinite`]. Graphs with at most one vertex have diameter 0.
    pub fn metric_invariants(&self) -> MetricInvariants {
        let mut diameter = Extent::Finite(0);
        let mut girth = Extent::Infinite;
        for s in 0..self.n {
            let dist = self.distances_from(s);
            for d in &dist {
                let d = match d {
                    Some(d) => Extent::Finite(*d),
                    None => Extent::Infinite,
                };
                diameter = diameter.max(d);
            }
            // A non-tree edge {u,w} of the BFS tree rooted at s closes a
            // closed walk of length d(u)+d(w)+1; the minimum over all roots
            // is the girth.
            let mut parent = vec![usize::MAX; self.n];
            let mut order = VecDeque::from([s]);
            let mut visited = vec![false; self.n];
            visited[s] = true;
            while let Some(u) = order.pop_front() {
                for &w in &self.adj[u] {
                    if !visited[w] {
                        visited[w] = true;
                        parent[w] = u;
                        order.push_back(w);
                    } else if parent[u] != w {
                        if let (Some(du), Some(dw)) = (dist[u], dist[w]) {
                            girth = girth.min(Extent::Finite(du + dw + 1));
                        }
                    }
                }
            }
        }
        MetricInvariants { diameter, girth }
    }

    /// The `m`-th subdivision: each edge is replaced by a path with `m` edges.
    ///
    /// Original vertices keep their indices. Subdivision vertices follow in
    /// canonical edge order, each edge's run listed from its smaller endpoint
    /// towards its larger one.
    pub fn subdivide(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "subdivision order must be at least 1".into(),
            ));
        }
        if m == 1 {
            return Ok(self.clone());
        }
        let inner = m - 1;
        let total = self.n + inner * self.edges.len();
        let mut edges = Vec::with_capacity(m * self.edges.len());
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            let base = self.n + i * inner;
            let mut prev = u;
            for j in 0..inner {
                edges.push((prev, base + j));
                prev = base + j;
            }
            edges.push((prev, v));
        }
        Graph::new(total, edges)
    }

    /// Line graph; vertex `i` is the `i`-th edge in canonical order.
    pub fn line_graph(&self) -> Self {
        let mut edges = Vec::new();
        for v in 0..self.n {
            let incident: Vec<usize> = self.adj[v]
                .iter()
                .map(|&w| self.edge_index(v, w).expect("adjacent pair is an edge"))
                .collect();
            for (a, &e) in incident.iter().enumerate() {
                for &f in &incident[a + 1..] {
                    edges.push((e, f));
                }
            }
        }
        // Two distinct edges of a simple graph share at most one endpoint.
        Graph::new(self.edges.len(), edges).expect("line graph is simple")
    }

    /// Subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Self {
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(vertices.len(), edges).expect("induced subgraph is simple")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidGraph(e.to_string()))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        Graph::new(repr.n, repr.edges.into_iter().map(|[u, v]| (u, v))).map_err(D::Error::custom)
    }
}

/// Minimum and maximum valency plus the per-vertex valencies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    /// `None` for the graph with no vertices.
    pub min: Option<usize>,
    pub max: Option<usize>,
    pub histogram: Vec<usize>,
}

/// A length that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extent {
    Finite(usize),
    Infinite,
}

impl Extent {
    pub fn finite(self) -> Option<usize> {
        match self {
            Extent::Finite(d) => Some(d),
            Extent::Infinite => None,
        }
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(d) => write!(f, "{d}"),
            Extent::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Extent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extent::Finite(d) => s.serialize_u64(*d as u64),
            Extent::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|v| Extent::Finite(v as usize))
                .ok_or_else(|| D::Error::custom("extent must be a non-negative integer")),
            serde_json::Value::String(s) if s == "inf" => Ok(Extent::Infinite),
            other => Err(D::Error::custom(format!("bad extent {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricInvariants {
    pub diameter: Extent,
    pub girth: Extent,
}
