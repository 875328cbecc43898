//! Vertex and edge primitives shared by every module.

use serde::{Deserialize, Serialize};

/// Dense 0-based vertex index.
pub type VertexId = u32;

/// Global color id assigned to a vertex.
pub type Color = u32;

/// An undirected edge as it arrived in the stream.
///
/// Endpoint order is kept because the one-pass coloring recolors the first
/// listed endpoint. Equality and hashing are on the ordered pair; use
/// [`Edge::key`] for unordered comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub const fn new(u: VertexId, v: VertexId) -> Self {
        Edge { u, v }
    }

    /// The unordered pair as `(min, max)`.
    pub fn key(&self) -> (VertexId, VertexId) {
        if self.u <= self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint that is not `x`. Callers guarantee `x` is an endpoint.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl From<(VertexId, VertexId)> for Edge {
    fn from((u, v): (VertexId, VertexId)) -> Self {
        Edge { u, v }
    }
}

/// Header facts about a stream: vertex count, edge count and maximum degree
/// when known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamMeta {
    pub n: usize,
    pub m: Option<u64>,
    pub max_degree: Option<u32>,
}

impl StreamMeta {
    pub fn new(n: usize) -> Self {
        StreamMeta {
            n,
            m: None,
            max_degree: None,
        }
    }
}

/// Maximum degree of an edge list over `n` vertices, counting every listed
/// edge (duplicates included).
pub fn max_degree_of(n: usize, edges: &[Edge]) -> u32 {
    let mut deg = vec![0u32; n];
    for e in edges {
        deg[e.u as usize] += 1;
        deg[e.v as usize] += 1;
    }
    deg.into_iter().max().unwrap_or(0)
}
