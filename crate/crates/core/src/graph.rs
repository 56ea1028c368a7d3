//! Simple undirected graphs with stable, unique vertex labels.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: BTreeMap<String, Vertex>,
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// Builds a graph from labels and labelled edges.
    pub fn from_edges(labels: &[&str], edges: &[(&str, &str)]) -> Result<Graph> {
        let mut b = GraphBuilder::default();
        for l in labels {
            b.add_vertex(*l)?;
        }
        for (u, v) in edges {
            b.add_edge_by_label(u, v)?;
        }
        Ok(b.build())
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<Vertex> {
        self.vertex(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Neighbors in increasing index order.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Every edge once, as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `keep`, with vertices renumbered in the order given.
    pub fn induced(&self, keep: &[Vertex]) -> Result<Graph> {
        let mut pos = alloc::vec![usize::MAX; self.vertex_count()];
        let mut b = GraphBuilder::default();
        for (i, &v) in keep.iter().enumerate() {
            self.check(v)?;
            pos[v] = i;
            b.add_vertex(self.labels[v].clone())?;
        }
        for (i, &v) in keep.iter().enumerate() {
            for &u in &self.adj[v] {
                let j = pos[u];
                if j != usize::MAX && i < j {
                    b.add_edge(i, j)?;
                }
            }
        }
        Ok(b.build())
    }

    pub(crate) fn check(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, vertex_count: self.vertex_count() })
        }
    }
}

#[derive(Default, Debug, Clone)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: BTreeMap<String, Vertex>,
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl GraphBuilder {
    pub fn with_capacity(vertices: usize) -> Self {
        GraphBuilder {
            labels: Vec::with_capacity(vertices),
            index: BTreeMap::new(),
            adj: Vec::with_capacity(vertices),
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<Vertex> {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(Error::DuplicateLabel(label));
        }
        let v = self.labels.len();
        self.index.insert(label.clone(), v);
        self.labels.push(label);
        self.adj.push(Vec::new());
        Ok(v)
    }

    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.index.get(label).copied()
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.labels.len();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, vertex_count: n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u].contains(&v) {
            return Err(Error::DuplicateEdge(u, v));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edge_count += 1;
        Ok(())
    }

    /// Like [`add_edge`](Self::add_edge) but skips the duplicate scan.
    /// Only for callers that generate each edge once by construction.
    pub(crate) fn add_fresh_edge(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(u != v && !self.adj[u].contains(&v));
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edge_count += 1;
    }

    pub fn add_edge_by_label(&mut self, u: &str, v: &str) -> Result<()> {
        let a = self.vertex(u).ok_or_else(|| Error::UnknownLabel(u.to_string()))?;
        let b = self.vertex(v).ok_or_else(|| Error::UnknownLabel(v.to_string()))?;
        self.add_edge(a, b)
    }

    pub fn build(mut self) -> Graph {
        for ns in &mut self.adj {
            ns.sort_unstable();
        }
        Graph { labels: self.labels, index: self.index, adj: self.adj, edge_count: self.edge_count }
    }
}
