//! Multi-pass degree peeling and the implicit acyclic orientation it defines.
//!
//! Round `i` takes one pass to count, for every still-active vertex, its
//! neighbors that are also active. Every active vertex whose count is at most
//! `floor((2+gamma) alpha)` moves into layer `i`. When `alpha` bounds the
//! arboricity, more than a `gamma/(2+gamma)` fraction of the active vertices
//! leaves each round, so the number of rounds is at most
//! `ceil(log n / log((2+gamma)/2))`.
//!
//! Each vertex then has at most the threshold many neighbors in its own or
//! later layers. Orienting every edge toward the larger `(layer, id)` key
//! gives an acyclic orientation with that out-degree bound. The orientation
//! is never stored; [`orient`] computes it from the layers on demand.

use std::cmp::Ordering;

use thiserror::Error;

use crate::graph::{Edge, VertexId};
use crate::params::{peel_round_bound, peel_threshold, positive, ParamError};
use crate::stream::{EdgeSink, EdgeStream, StreamError};

/// Layer index of every vertex (1-based) and the degree that admitted it.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerPartition {
    layer: Vec<u32>,
    witnessed: Vec<u32>,
    k: u32,
    alpha: u32,
    gamma: f64,
}

impl LayerPartition {
    /// Builds a partition from explicit layers, e.g. for tests. Layers must
    /// be `>= 1`.
    pub fn from_layers(layer: Vec<u32>) -> Self {
        assert!(layer.iter().all(|&l| l >= 1), "layers are 1-based");
        let k = layer.iter().copied().max().unwrap_or(0);
        LayerPartition {
            witnessed: vec![0; layer.len()],
            layer,
            k,
            alpha: 0,
            gamma: 0.0,
        }
    }

    pub fn n(&self) -> usize {
        self.layer.len()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn threshold(&self) -> u64 {
        peel_threshold(self.alpha, self.gamma)
    }

    pub fn layer(&self, v: VertexId) -> u32 {
        self.layer[v as usize]
    }

    pub fn layers(&self) -> &[u32] {
        &self.layer
    }

    /// Active degree of `v` in the round that peeled it.
    pub fn witnessed_degree(&self, v: VertexId) -> u32 {
        self.witnessed[v as usize]
    }

    /// Orientation key; edges point from the smaller key to the larger.
    pub fn key(&self, v: VertexId) -> (u32, VertexId) {
        (self.layer[v as usize], v)
    }

    pub fn cmp_vertices(&self, a: VertexId, b: VertexId) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

/// `(tail, head)` of `e` under the layer orientation: lower layer first,
/// lower id first within a layer. Symmetric in the endpoint order of `e`.
pub fn orient(e: Edge, lp: &LayerPartition) -> (VertexId, VertexId) {
    if lp.key(e.u) < lp.key(e.v) {
        (e.u, e.v)
    } else {
        (e.v, e.u)
    }
}

#[derive(Debug, Error)]
pub enum PeelError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(
        "peeling stalled in round {round}: {active} active vertices, smallest active degree \
         {min_degree} exceeds threshold {threshold}; alpha = {alpha} is below the arboricity"
    )]
    Stall {
        round: u32,
        active: usize,
        min_degree: u32,
        threshold: u64,
        alpha: u32,
    },
}

/// Round-by-round peeling state. Feed one pass of edges through
/// [`EdgeSink`], then call [`Peeler::finish_round`].
#[derive(Debug, Clone)]
pub struct Peeler {
    active: Vec<bool>,
    active_count: usize,
    degree: Vec<u32>,
    layer: Vec<u32>,
    witnessed: Vec<u32>,
    round: u32,
    threshold: u64,
    alpha: u32,
    gamma: f64,
}

impl Peeler {
    pub fn new(n: usize, alpha: u32, gamma: f64) -> Result<Self, ParamError> {
        let gamma = positive("gamma", gamma)?;
        Ok(Peeler {
            active: vec![true; n],
            active_count: n,
            degree: vec![0; n],
            layer: vec![0; n],
            witnessed: vec![0; n],
            round: 0,
            threshold: peel_threshold(alpha, gamma),
            alpha,
            gamma,
        })
    }

    pub fn is_done(&self) -> bool {
        self.active_count == 0
    }

    pub fn active_count(&self) -> usize {
        self.active_count
    }

    /// Rounds completed so far.
    pub fn rounds(&self) -> u32 {
        self.round
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    /// Closes the current round: peels every active vertex at or below the
    /// threshold and resets the counters. Returns the number peeled.
    pub fn finish_round(&mut self) -> Result<usize, PeelError> {
        self.round += 1;
        let mut peeled = Vec::new();
        let mut min_degree = u32::MAX;
        for v in 0..self.active.len() {
            if !self.active[v] {
                continue;
            }
            min_degree = min_degree.min(self.degree[v]);
            if self.degree[v] as u64 <= self.threshold {
                peeled.push(v);
            }
        }
        if peeled.is_empty() && self.active_count > 0 {
            return Err(PeelError::Stall {
                round: self.round,
                active: self.active_count,
                min_degree,
                threshold: self.threshold,
                alpha: self.alpha,
            });
        }
        for &v in &peeled {
            self.active[v] = false;
            self.layer[v] = self.round;
            self.witnessed[v] = self.degree[v];
        }
        self.active_count -= peeled.len();
        self.degree.iter_mut().for_each(|d| *d = 0);
        Ok(peeled.len())
    }

    pub fn into_partition(self) -> LayerPartition {
        assert!(self.is_done(), "peeling still has active vertices");
        LayerPartition {
            layer: self.layer,
            witnessed: self.witnessed,
            k: self.round,
            alpha: self.alpha,
            gamma: self.gamma,
        }
    }
}

impl EdgeSink for Peeler {
    fn edge(&mut self, e: Edge) {
        let (u, v) = (e.u as usize, e.v as usize);
        if self.active[u] && self.active[v] {
            self.degree[u] += 1;
            self.degree[v] += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeelOutcome {
    pub partition: LayerPartition,
    /// Stream traversals used; equals `partition.k()`.
    pub passes: u64,
    /// Vertices peeled in each round.
    pub round_sizes: Vec<usize>,
}

/// Peels until no vertex is active, one pass per round.
pub fn peel(stream: &mut EdgeStream, alpha: u32, gamma: f64) -> Result<PeelOutcome, PeelError> {
    let mut peeler = Peeler::new(stream.n(), alpha, gamma)?;
    let before = stream.passes();
    let mut round_sizes = Vec::new();
    while !peeler.is_done() {
        stream.run_pass(&mut [&mut peeler])?;
        round_sizes.push(peeler.finish_round()?);
    }
    Ok(PeelOutcome {
        partition: peeler.into_partition(),
        passes: stream.passes() - before,
        round_sizes,
    })
}

/// Round ceiling for an instance whose arboricity is at most the peeling
/// `alpha`.
pub fn round_bound(n: usize, gamma: f64) -> u64 {
    peel_round_bound(n, gamma)
}

/// One extra pass: the largest number of neighbors any vertex has in its own
/// or a later layer.
pub fn check_p1(stream: &mut EdgeStream, lp: &LayerPartition) -> Result<u32, StreamError> {
    let mut forward = vec![0u32; stream.n()];
    stream.run_pass(&mut [&mut |e: Edge| {
        let (lu, lv) = (lp.layer(e.u), lp.layer(e.v));
        if lv >= lu {
            forward[e.u as usize] += 1;
        }
        if lu >= lv {
            forward[e.v as usize] += 1;
        }
    }])?;
    Ok(forward.into_iter().max().unwrap_or(0))
}

/// Out-degree of every vertex under [`orient`] over `edges`.
pub fn out_degrees(
    n: usize,
    edges: impl IntoIterator<Item = Edge>,
    lp: &LayerPartition,
) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for e in edges {
        out[orient(e, lp).0 as usize] += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{generate, Family, GenSpec};

    fn stream_of(spec: GenSpec) -> EdgeStream {
        let g = generate(&spec).unwrap();
        EdgeStream::from_edges(spec.n, g.edges).unwrap()
    }

    #[test]
    fn star_peels_in_two_rounds() {
        let mut s = stream_of(GenSpec::new(Family::Star, 6));
        let out = peel(&mut s, 1, 1.0).unwrap();
        let lp = &out.partition;
        assert_eq!(lp.k(), 2);
        assert_eq!(lp.layer(0), 2);
        assert!((1..6).all(|v| lp.layer(v) == 1));
        assert_eq!(out.passes, 2);
        assert_eq!(out.round_sizes, vec![5, 1]);
        assert_eq!(lp.witnessed_degree(0), 0);
        assert_eq!(lp.witnessed_degree(1), 1);
    }

    #[test]
    fn low_degree_graph_is_one_layer() {
        let mut s = stream_of(GenSpec::new(Family::Petersen, 10));
        let out = peel(&mut s, 1, 1.0).unwrap();
        assert_eq!(out.partition.k(), 1);
        assert_eq!(out.passes, 1);
    }

    #[test]
    fn c5_with_zero_alpha_stalls() {
        let mut s = stream_of(GenSpec::new(Family::Cycle, 5));
        match peel(&mut s, 0, 1.0) {
            Err(PeelError::Stall {
                round: 1,
                active: 5,
                min_degree: 2,
                threshold: 0,
                ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gamma_must_be_positive() {
        let mut s = stream_of(GenSpec::new(Family::Path, 4));
        assert!(matches!(peel(&mut s, 1, 0.0), Err(PeelError::Param(_))));
    }

    #[test]
    fn orient_examples() {
        let lp = LayerPartition::from_layers(vec![1, 2, 1, 1, 1, 1, 1, 1]);
        assert_eq!(orient(Edge::new(0, 1), &lp), (0, 1));
        assert_eq!(orient(Edge::new(1, 0), &lp), (0, 1));
        assert_eq!(orient(Edge::new(7, 3), &lp), (3, 7));
        assert_eq!(orient(Edge::new(3, 7), &lp), (3, 7));
        // Layer beats id.
        let lp = LayerPartition::from_layers(vec![3, 1]);
        assert_eq!(orient(Edge::new(0, 1), &lp), (1, 0));
    }

    #[test]
    fn check_p1_small_cases() {
        let mut single = EdgeStream::from_edges(2, vec![Edge::new(0, 1)]).unwrap();
        let lp = peel(&mut single, 1, 1.0).unwrap().partition;
        assert_eq!(check_p1(&mut single, &lp).unwrap(), 1);

        let mut empty = EdgeStream::from_edges(4, Vec::<Edge>::new()).unwrap();
        let lp = peel(&mut empty, 1, 1.0).unwrap().partition;
        assert_eq!(lp.k(), 1);
        assert_eq!(check_p1(&mut empty, &lp).unwrap(), 0);
    }

    #[test]
    fn forests_respect_p1() {
        for seed in 0..5 {
            let mut s = stream_of(GenSpec::forest_union(400, 1, seed));
            let out = peel(&mut s, 1, 1.0).unwrap();
            assert!(check_p1(&mut s, &out.partition).unwrap() <= 3);
            assert!(out.passes <= round_bound(400, 1.0));
        }
    }

    #[test]
    fn out_degree_equals_greater_key_neighbors() {
        let spec = GenSpec::gnm(30, 120, 4);
        let edges = generate(&spec).unwrap().edges;
        let mut s = EdgeStream::from_edges(30, edges.clone()).unwrap();
        let lp = peel(&mut s, 5, 1.0).unwrap().partition;
        let out = out_degrees(30, edges.iter().copied(), &lp);
        for v in 0..30u32 {
            let brute = edges
                .iter()
                .filter(|e| e.u == v || e.v == v)
                .filter(|e| lp.key(e.other(v)) > lp.key(v))
                .count() as u32;
            assert_eq!(out[v as usize], brute);
        }
    }
}
