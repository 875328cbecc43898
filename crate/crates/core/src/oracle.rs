//! Offline ground truth: properness checks, greedy coloring, degeneracy
//! peeling and brute-force Nash-Williams arboricity.
//!
//! Everything here works on a fully stored graph (or a single verification
//! pass) and is meant for checking the streaming algorithms, not for use
//! inside them.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::coloring::Coloring;
use crate::graph::{Color, Edge, VertexId};
use crate::stored::StoredGraph;
use crate::stream::{EdgeStream, StreamError};

/// Largest vertex count accepted by [`nash_williams_arboricity`].
pub const BRUTE_FORCE_MAX_N: usize = 20;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("coloring covers {got} vertices, graph has {n}")]
    MissingVertices { n: usize, got: usize },
    #[error("vertex order is not a permutation of 0..{n}")]
    NotPermutation { n: usize },
    #[error(
        "brute-force arboricity is limited to n <= {BRUTE_FORCE_MAX_N} (got {n}); \
         use the degeneracy bounds alpha <= d <= 2*alpha - 1 instead"
    )]
    TooLarge { n: usize },
    #[error(transparent)]
    Stream(#[from] StreamError),
}

/// Edges of `g` whose endpoints share a color. Empty iff `c` is proper.
pub fn verify_proper(g: &StoredGraph, c: &Coloring) -> Result<Vec<Edge>, OracleError> {
    if c.len() != g.n() {
        return Err(OracleError::MissingVertices {
            n: g.n(),
            got: c.len(),
        });
    }
    Ok(g.edges().filter(|e| c.color(e.u) == c.color(e.v)).collect())
}

/// Single-pass variant; violations come back in stream order.
pub fn verify_proper_stream(
    stream: &mut EdgeStream,
    c: &Coloring,
) -> Result<Vec<Edge>, OracleError> {
    if c.len() != stream.n() {
        return Err(OracleError::MissingVertices {
            n: stream.n(),
            got: c.len(),
        });
    }
    let mut bad = Vec::new();
    stream.run_pass(&mut [&mut |e: Edge| {
        if c.color(e.u) == c.color(e.v) {
            bad.push(e);
        }
    }])?;
    Ok(bad)
}

/// First-fit coloring along `order`: each vertex takes the smallest color
/// absent from its already-colored neighbors.
pub fn greedy_color(g: &StoredGraph, order: &[VertexId]) -> Result<Coloring, OracleError> {
    let n = g.n();
    let not_perm = || OracleError::NotPermutation { n };
    if order.len() != n {
        return Err(not_perm());
    }
    let mut seen = vec![false; n];
    for &v in order {
        let slot = seen.get_mut(v as usize).ok_or_else(not_perm)?;
        if std::mem::replace(slot, true) {
            return Err(not_perm());
        }
    }

    const UNSET: Color = Color::MAX;
    let mut color = vec![UNSET; n];
    let mut mark = vec![usize::MAX; g.max_degree() + 1];
    for (step, &v) in order.iter().enumerate() {
        for &w in g.neighbors(v) {
            let cw = color[w as usize];
            if (cw as usize) < mark.len() {
                mark[cw as usize] = step;
            }
        }
        let pick = mark.iter().position(|&s| s != step).expect("deg + 1 slots");
        color[v as usize] = pick as Color;
    }
    Ok(Coloring::new(color, g.max_degree() as u32 + 1))
}

/// Degeneracy and a min-degree elimination order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyResult {
    pub d: u32,
    pub order: Vec<VertexId>,
}

impl DegeneracyResult {
    /// Reverse elimination order; greedy along it uses at most `d + 1`
    /// colors.
    pub fn coloring_order(&self) -> Vec<VertexId> {
        self.order.iter().rev().copied().collect()
    }
}

/// Repeatedly removes a minimum-degree vertex (ties to the lowest id).
pub fn degeneracy(g: &StoredGraph) -> DegeneracyResult {
    let n = g.n();
    let mut deg: Vec<u32> = (0..n).map(|v| g.degree(v as VertexId) as u32).collect();
    let mut removed = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(u32, VertexId)>> = (0..n as VertexId)
        .map(|v| Reverse((deg[v as usize], v)))
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    while let Some(Reverse((k, v))) = heap.pop() {
        if removed[v as usize] || k != deg[v as usize] {
            continue;
        }
        removed[v as usize] = true;
        d = d.max(k);
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w as usize] {
                deg[w as usize] -= 1;
                heap.push(Reverse((deg[w as usize], w)));
            }
        }
    }
    DegeneracyResult { d, order }
}

/// Exact arboricity by maximizing `ceil(|E(S)| / (|S| - 1))` over every
/// vertex subset with `|S| > 1`. Graphs without such a subset score 0.
pub fn nash_williams_arboricity(g: &StoredGraph) -> Result<u32, OracleError> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(OracleError::TooLarge { n });
    }
    let adj: Vec<u32> = (0..n as VertexId)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut best = 0;
    for subset in 1u32..(1u32 << n) {
        let size = subset.count_ones();
        if size < 2 {
            continue;
        }
        let mut twice_edges = 0;
        let mut rest = subset;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice_edges += (adj[v] & subset).count_ones();
        }
        best = best.max((twice_edges / 2).div_ceil(size - 1));
    }
    Ok(best)
}
