//! In-memory adjacency storage with stored-edge accounting.

use crate::graph::{Edge, VertexId};

/// Undirected simple graph over `0..n` built incrementally from stream edges.
///
/// Duplicate insertions are no-ops. `peak_stored_edges` is a high-water mark
/// that survives [`StoredGraph::clear`].
#[derive(Debug, Clone, Default)]
pub struct StoredGraph {
    adjacency: Vec<Vec<VertexId>>,
    stored_edges: u64,
    peak_stored_edges: u64,
}

impl StoredGraph {
    pub fn new(n: usize) -> Self {
        StoredGraph {
            adjacency: vec![Vec::new(); n],
            stored_edges: 0,
            peak_stored_edges: 0,
        }
    }

    /// Builds a graph from an edge list, dropping duplicates.
    ///
    /// # Panics
    ///
    /// On a self-loop or an endpoint `>= n`.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Self {
        let mut g = StoredGraph::new(n);
        for &e in edges {
            g.add_edge(e).expect("self-loop in edge list");
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn stored_edges(&self) -> u64 {
        self.stored_edges
    }

    pub fn peak_stored_edges(&self) -> u64 {
        self.peak_stored_edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[a as usize].contains(&b)
    }

    /// Inserts `e` in both directions. Returns `Ok(true)` when the edge was
    /// new, `Ok(false)` for a duplicate.
    pub fn add_edge(&mut self, e: Edge) -> Result<bool, SelfLoop> {
        if e.is_loop() {
            return Err(SelfLoop(e.u));
        }
        if self.has_edge(e.u, e.v) {
            return Ok(false);
        }
        self.adjacency[e.u as usize].push(e.v);
        self.adjacency[e.v as usize].push(e.u);
        self.stored_edges += 1;
        self.peak_stored_edges = self.peak_stored_edges.max(self.stored_edges);
        Ok(true)
    }

    /// Drops all edges; the peak is kept.
    pub fn clear(&mut self) {
        for list in &mut self.adjacency {
            list.clear();
        }
        self.stored_edges = 0;
    }

    /// Every stored edge once, as `(min, max)` in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as VertexId;
            list.iter()
                .filter(move |&&v| u < v)
                .map(move |&v| Edge::new(u, v))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("self-loop on vertex {0}")]
pub struct SelfLoop(pub VertexId);
