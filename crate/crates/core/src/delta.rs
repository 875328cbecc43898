//! One-pass randomized `(1+eps)Delta` vertex coloring.
//!
//! Before the pass every vertex draws a class uniformly from `0..ell`. Class
//! `i` owns the palette `i*r .. (i+1)*r`, so edges between classes can never
//! conflict and are dropped on arrival. An edge inside a class is stored in
//! that class's subgraph; if its endpoints currently share a color, the first
//! listed endpoint moves to the smallest slot not used by any of its stored
//! neighbors. If all `r` slots are taken the run aborts.
//!
//! Stored subgraphs stay properly colored after every edge, so the final
//! coloring is proper on all monochromatic edges and hence on the whole graph.
//! Intermediate colorings are not proper for the global graph: an edge whose
//! endpoints share a color may simply not have arrived yet.

use std::ops::Range;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::Coloring;
use crate::graph::{Color, Edge, VertexId};
use crate::params::{DeltaParams, ParamError};
use crate::seed::{rng_for, Purpose};
use crate::stored::StoredGraph;
use crate::stream::{EdgeStream, StreamError};

/// Random vertex → class assignment plus the per-class palettes.
#[derive(Debug, Clone)]
pub struct PhasePartition {
    params: DeltaParams,
    seed: u64,
    class: Vec<u32>,
}

impl PhasePartition {
    pub fn params(&self) -> &DeltaParams {
        &self.params
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn ell(&self) -> u32 {
        self.params.ell
    }

    pub fn r(&self) -> u32 {
        self.params.r
    }

    pub fn class_of(&self, v: VertexId) -> u32 {
        self.class[v as usize]
    }

    pub fn classes(&self) -> &[u32] {
        &self.class
    }

    /// Global color ids owned by `class`. Palettes of distinct classes are
    /// disjoint.
    pub fn palette(&self, class: u32) -> Range<Color> {
        let r = self.params.r;
        class * r..(class + 1) * r
    }

    pub fn global_color(&self, class: u32, slot: u32) -> Color {
        class * self.params.r + slot
    }
}

/// Draws the class of every vertex, in id order, from the phase-one stream
/// of `seed`.
pub fn build_phase1(
    n: usize,
    delta: u32,
    epsilon: f64,
    c: f64,
    seed: u64,
) -> Result<PhasePartition, ParamError> {
    let params = DeltaParams::new(n, delta, epsilon, c)?;
    Ok(assign_classes(params, seed))
}

pub(crate) fn draw_classes(n: usize, ell: u32, seed: u64) -> Vec<u32> {
    let mut rng = rng_for(seed, Purpose::PhaseOne);
    (0..n).map(|_| rng.random_range(0..ell)).collect()
}

fn assign_classes(params: DeltaParams, seed: u64) -> PhasePartition {
    PhasePartition {
        class: draw_classes(params.n, params.ell, seed),
        params,
        seed,
    }
}

/// Palette exhaustion: every slot of `vertex`'s class palette is held by a
/// stored neighbor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[error(
    "abort after {edges_seen} edges: vertex {vertex} (class {class}) has {mono_degree} \
     monochromatic neighbors covering all {r} colors; reproduce with seed {seed}"
)]
pub struct Abort {
    pub vertex: VertexId,
    pub class: u32,
    pub mono_degree: u32,
    pub r: u32,
    pub edges_seen: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOutcome {
    /// Endpoints in different classes.
    Discarded,
    /// Already stored earlier in the pass.
    Duplicate,
    Stored,
    /// Stored, and `vertex` moved to `slot` to resolve a conflict.
    Recolored {
        vertex: VertexId,
        slot: u32,
    },
}

/// Streaming state: the stored monochromatic subgraphs (kept as one graph,
/// since classes are vertex-disjoint) and each vertex's palette slot.
#[derive(Debug, Clone)]
pub struct OnlineColorState {
    partition: PhasePartition,
    graph: StoredGraph,
    slot: Vec<u32>,
    stamp: Vec<u64>,
    epoch: u64,
    edges_seen: u64,
    recolors: u64,
    last_cost: u64,
    worst_cost: u64,
}

impl OnlineColorState {
    /// Every vertex starts on slot 0 of its class palette.
    pub fn new(partition: PhasePartition) -> Self {
        let n = partition.class.len();
        let r = partition.params.r as usize;
        OnlineColorState {
            graph: StoredGraph::new(n),
            slot: vec![0; n],
            stamp: vec![0; r],
            epoch: 0,
            edges_seen: 0,
            recolors: 0,
            last_cost: 0,
            worst_cost: 0,
            partition,
        }
    }

    pub fn partition(&self) -> &PhasePartition {
        &self.partition
    }

    pub fn stored(&self) -> &StoredGraph {
        &self.graph
    }

    pub fn slot(&self, v: VertexId) -> u32 {
        self.slot[v as usize]
    }

    pub fn recolors(&self) -> u64 {
        self.recolors
    }

    /// Neighbor entries plus palette slots examined by the most recent edge.
    pub fn last_edge_cost(&self) -> u64 {
        self.last_cost
    }

    /// Largest [`Self::last_edge_cost`] seen so far.
    pub fn worst_edge_cost(&self) -> u64 {
        self.worst_cost
    }

    pub fn process_edge(&mut self, e: Edge) -> Result<EdgeOutcome, Abort> {
        self.edges_seen += 1;
        self.last_cost = 0;
        let class = self.partition.class_of(e.u);
        if class != self.partition.class_of(e.v) {
            return Ok(EdgeOutcome::Discarded);
        }
        if !self.graph.add_edge(e).expect("streams reject self-loops") {
            return Ok(EdgeOutcome::Duplicate);
        }
        if self.slot[e.u as usize] != self.slot[e.v as usize] {
            return Ok(EdgeOutcome::Stored);
        }

        self.epoch += 1;
        let neighbors = self.graph.neighbors(e.u);
        for &w in neighbors {
            self.stamp[self.slot[w as usize] as usize] = self.epoch;
        }
        let free = self.stamp.iter().position(|&s| s != self.epoch);
        let probed = free.map_or(self.stamp.len(), |s| s + 1);
        self.last_cost = (neighbors.len() + probed) as u64;
        self.worst_cost = self.worst_cost.max(self.last_cost);
        match free {
            Some(s) => {
                self.slot[e.u as usize] = s as u32;
                self.recolors += 1;
                Ok(EdgeOutcome::Recolored {
                    vertex: e.u,
                    slot: s as u32,
                })
            }
            None => Err(Abort {
                vertex: e.u,
                class,
                mono_degree: neighbors.len() as u32,
                r: self.partition.r(),
                edges_seen: self.edges_seen,
                seed: self.partition.seed,
            }),
        }
    }

    pub fn coloring(&self) -> Coloring {
        let assignment = self
            .slot
            .iter()
            .zip(&self.partition.class)
            .map(|(&s, &class)| self.partition.global_color(class, s))
            .collect();
        Coloring::new(assignment, self.partition.params.palette_size() as u32)
    }

    /// Largest stored degree inside each class.
    pub fn class_max_degrees(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.partition.ell() as usize];
        for v in 0..self.graph.n() as VertexId {
            let c = self.partition.class_of(v) as usize;
            out[c] = out[c].max(self.graph.degree(v) as u32);
        }
        out
    }
}

/// Metrics written next to a coloring. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaMetrics {
    pub n: usize,
    pub m: u64,
    pub ell: u32,
    pub r: u32,
    pub passes: u64,
    pub colors_used: u64,
    pub peak_stored_edges: u64,
    pub max_class_degree: u32,
    pub aborted: bool,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct DeltaRun {
    pub coloring: Coloring,
    pub metrics: DeltaMetrics,
    pub params: DeltaParams,
    /// Class of every vertex.
    pub classes: Vec<u32>,
    pub class_max_degree: Vec<u32>,
    pub worst_edge_cost: u64,
    pub recolors: u64,
}

#[derive(Debug, Error)]
pub enum DeltaError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error("{abort}")]
    Abort {
        abort: Abort,
        metrics: Box<DeltaMetrics>,
    },
}

/// Runs the coloring in exactly one pass over `stream`.
///
/// `delta` must be at least the true maximum degree; a larger value only
/// grows `ell` and `r`.
pub fn run_algorithm1(
    stream: &mut EdgeStream,
    delta: u32,
    epsilon: f64,
    c: f64,
    seed: u64,
) -> Result<DeltaRun, DeltaError> {
    let partition = build_phase1(stream.n(), delta, epsilon, c, seed)?;
    let params = *partition.params();
    let classes = partition.classes().to_vec();
    let mut state = OnlineColorState::new(partition);
    let mut failure: Option<Abort> = None;
    let passes_before = stream.passes();
    let stats = stream.run_pass(&mut [&mut |e: Edge| {
        if failure.is_none() {
            if let Err(abort) = state.process_edge(e) {
                failure = Some(abort);
            }
        }
    }])?;

    let coloring = state.coloring();
    let class_max_degree = state.class_max_degrees();
    let metrics = DeltaMetrics {
        n: stream.n(),
        m: stats.edges,
        ell: params.ell,
        r: params.r,
        passes: stream.passes() - passes_before,
        colors_used: coloring.colors_used() as u64,
        peak_stored_edges: state.stored().peak_stored_edges(),
        max_class_degree: class_max_degree.iter().copied().max().unwrap_or(0),
        aborted: failure.is_some(),
        seed,
    };
    if let Some(abort) = failure {
        return Err(DeltaError::Abort {
            abort,
            metrics: Box::new(metrics),
        });
    }
    Ok(DeltaRun {
        coloring,
        metrics,
        params,
        classes,
        class_max_degree,
        worst_edge_cost: state.worst_edge_cost(),
        recolors: state.recolors(),
    })
}
