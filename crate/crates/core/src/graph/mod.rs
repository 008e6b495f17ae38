//! Finite simple graphs with stable string labels.
//!
//! Vertices are addressed internally by their 0-based index; labels are kept
//! for I/O and diagnostics. All set-valued results are sorted by index.

mod analysis;
mod parse;

use std::collections::HashMap;
use std::fmt;

pub use analysis::{
    complement, connected_components, dominated_vertices, join_decompose, removal_step_at,
    select_removal,
    JoinDecomposition, RemovalStep,
};
pub use parse::{parse_graph, GraphFormat};

use crate::error::{Error, Result};

/// A finite simple graph: symmetric, irreflexive adjacency over labelled vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<bool>,
}

impl Graph {
    /// Edgeless graph on the given labels.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let n = labels.len();
        Ok(Graph {
            labels,
            index,
            adj: vec![false; n * n],
        })
    }

    /// The zero-vertex graph. Only meaningful as a join factor.
    pub fn empty() -> Self {
        Graph {
            labels: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        }
    }

    /// Graph on vertices labelled `"1"..="n"` with no edges.
    pub fn edgeless(n: usize) -> Self {
        Graph::new((1..=n).map(|i| i.to_string())).expect("numeric labels are distinct")
    }

    /// Graph on vertices labelled `"1"..="n"` with the given index pairs as edges.
    /// Duplicate pairs are merged.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            g.check_index(u)?;
            g.check_index(v)?;
            if u == v {
                return Err(Error::SelfLoop(g.labels[u].clone()));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Cycle `1 - 2 - ... - n - 1`.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_index_edges(n, &edges).expect("cycle needs n >= 3")
    }

    /// Path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_index_edges(n, &edges).expect("valid path")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.labels.len() + v]
    }

    /// Neighbours of `v` in increasing index order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(move |&u| self.adjacent(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertex_count();
        (0..n).flat_map(move |u| ((u + 1)..n).filter(move |&v| self.adjacent(u, v)).map(move |v| (u, v)))
    }

    /// Adds the edge `u -- v`; fails on self-loops. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_index(u)?;
        self.check_index(v)?;
        if u == v {
            return Err(Error::SelfLoop(self.labels[u].clone()));
        }
        self.set_edge(u, v, true);
        Ok(())
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        let n = self.vertex_count();
        self.adj[u * n + v] = present;
        self.adj[v * n + u] = present;
    }

    pub fn check_index(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidIndex {
                index: v,
                vertices: self.vertex_count(),
            })
        }
    }

    /// Induced subgraph on `vertices`, taken in increasing index order. Labels carry over.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut sub = Graph::new(vs.iter().map(|&v| self.labels[v].clone()))
            .expect("labels of a graph are distinct");
        for (i, &u) in vs.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    sub.set_edge(i, j, true);
                }
            }
        }
        sub
    }

    /// The graph with vertex `v` and its incident edges deleted.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Join `self * other`: disjoint union plus every cross edge. Labels must be disjoint.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let n = self.vertex_count();
        let mut g = Graph::new(self.labels.iter().chain(other.labels.iter()).cloned())?;
        for (u, v) in self.edges() {
            g.set_edge(u, v, true);
        }
        for (u, v) in other.edges() {
            g.set_edge(n + u, n + v, true);
        }
        for u in 0..n {
            for v in 0..other.vertex_count() {
                g.set_edge(u, n + v, true);
            }
        }
        Ok(g)
    }

    /// Neighbourhood of `v` as a bit mask. Requires fewer than 64 vertices.
    pub(crate) fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.vertex_count() <= 64);
        self.neighbors(v).fold(0u64, |m, u| m | (1u64 << u))
    }

    /// Canonical edge-list JSON, the same schema accepted by [`parse_graph`].
    pub fn to_edge_json(&self) -> String {
        let edges: Vec<[&str; 2]> = self
            .edges()
            .map(|(u, v)| [self.label(u), self.label(v)])
            .collect();
        serde_json::json!({ "vertices": self.labels, "edges": edges }).to_string()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(u, v)| format!("{}-{}", self.labels[u], self.labels[v]))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &edges)
            .finish()
    }
}
