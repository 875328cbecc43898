//! `(2+eps)alpha` vertex coloring for graphs of bounded arboricity.
//!
//! Vertices draw a class uniformly from `0..ell` before the first pass. Pass
//! one both stores every monochromatic edge and runs peeling round one over
//! the full graph; further passes finish the peeling. Afterwards each
//! class subgraph, oriented by `(layer, id)`, is colored offline with a fresh
//! palette of `out_degree + 1` colors by first-fit in decreasing key order.
//! Cross-class edges are never stored: the palettes are disjoint.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::Coloring;
use crate::delta::draw_classes;
use crate::graph::{Color, Edge, VertexId};
use crate::params::{ArbParams, ParamError};
use crate::peel::{orient, LayerPartition, PeelError, Peeler};
use crate::stored::StoredGraph;
use crate::stream::{EdgeSink, EdgeStream, StreamError};

/// Run configuration: the derived parameters plus the seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArbRunConfig {
    pub params: ArbParams,
    pub seed: u64,
}

impl ArbRunConfig {
    pub fn new(n: usize, alpha: u32, epsilon: f64, c: f64, seed: u64) -> Result<Self, ParamError> {
        Ok(ArbRunConfig {
            params: ArbParams::new(n, alpha, epsilon, c)?,
            seed,
        })
    }
}

/// The stored monochromatic subgraphs. Classes are vertex-disjoint, so they
/// share one [`StoredGraph`]; class `i` is the part induced by the vertices
/// with `class == i`.
#[derive(Debug, Clone)]
pub struct MonochromeSubgraphs {
    class: Vec<u32>,
    ell: u32,
    graph: StoredGraph,
}

impl MonochromeSubgraphs {
    pub fn new(class: Vec<u32>, ell: u32) -> Self {
        debug_assert!(class.iter().all(|&c| c < ell));
        MonochromeSubgraphs {
            graph: StoredGraph::new(class.len()),
            class,
            ell,
        }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn class_of(&self, v: VertexId) -> u32 {
        self.class[v as usize]
    }

    pub fn classes(&self) -> &[u32] {
        &self.class
    }

    pub fn graph(&self) -> &StoredGraph {
        &self.graph
    }

    /// Vertices of each class, in id order.
    pub fn members(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.ell as usize];
        for (v, &c) in self.class.iter().enumerate() {
            out[c as usize].push(v as VertexId);
        }
        out
    }
}

impl EdgeSink for MonochromeSubgraphs {
    fn edge(&mut self, e: Edge) {
        if self.class[e.u as usize] == self.class[e.v as usize] {
            self.graph.add_edge(e).expect("streams reject self-loops");
        }
    }
}

/// Largest out-degree inside each class under the layer orientation. No
/// stream access.
pub fn compute_out_degrees(mono: &MonochromeSubgraphs, lp: &LayerPartition) -> Vec<u32> {
    let mut out = vec![0u32; mono.graph.n()];
    for e in mono.graph.edges() {
        out[orient(e, lp).0 as usize] += 1;
    }
    let mut per_class = vec![0u32; mono.ell as usize];
    for (v, &d) in out.iter().enumerate() {
        let c = mono.class[v] as usize;
        per_class[c] = per_class[c].max(d);
    }
    per_class
}

/// A contiguous range of global color ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Palette {
    pub offset: Color,
    pub size: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("palette of {size} colors is too small: vertex {vertex} needs slot {needed}")]
pub struct PaletteTooSmall {
    pub vertex: VertexId,
    pub needed: u32,
    pub size: u32,
}

/// First-fit over `vertices` in decreasing `(layer, id)` order, avoiding the
/// slots of out-neighbors (neighbors with a larger key, already colored).
/// Writes slots into `slots`, indexed by vertex.
fn dag_slots(
    g: &StoredGraph,
    vertices: &[VertexId],
    lp: &LayerPartition,
    size: u32,
    slots: &mut [u32],
) -> Result<(), PaletteTooSmall> {
    let mut order = vertices.to_vec();
    order.sort_unstable_by_key(|&v| std::cmp::Reverse(lp.key(v)));
    let mut stamp = vec![usize::MAX; size as usize + 1];
    for (step, &v) in order.iter().enumerate() {
        let key = lp.key(v);
        for &w in g.neighbors(v) {
            if lp.key(w) > key {
                if let Some(s) = stamp.get_mut(slots[w as usize] as usize) {
                    *s = step;
                }
            }
        }
        let pick = stamp.iter().position(|&s| s != step).unwrap_or(stamp.len()) as u32;
        if pick >= size {
            return Err(PaletteTooSmall {
                vertex: v,
                needed: pick,
                size,
            });
        }
        slots[v as usize] = pick;
    }
    Ok(())
}

/// Colors every vertex of `g` from `palette`, treating `g` as oriented by
/// `lp`. Needs `palette.size >= max out-degree + 1`.
pub fn offline_dag_color(
    g: &StoredGraph,
    lp: &LayerPartition,
    palette: Palette,
) -> Result<Coloring, PaletteTooSmall> {
    let vertices: Vec<VertexId> = (0..g.n() as VertexId).collect();
    let mut slots = vec![0u32; g.n()];
    dag_slots(g, &vertices, lp, palette.size, &mut slots)?;
    let assignment = slots.into_iter().map(|s| palette.offset + s).collect();
    Ok(Coloring::new(assignment, palette.offset + palette.size))
}

/// Metrics written next to a coloring. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArbMetrics {
    pub n: usize,
    pub m: u64,
    pub ell: u32,
    pub k: u32,
    pub passes: u64,
    pub colors_used: u64,
    pub per_class_out_degree: Vec<u32>,
    pub peak_stored_edges: u64,
    pub stalled: bool,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct ArbRun {
    pub coloring: Coloring,
    pub metrics: ArbMetrics,
    pub config: ArbRunConfig,
    pub layers: LayerPartition,
    pub classes: Vec<u32>,
    /// First global color of each class palette.
    pub palette_offsets: Vec<Color>,
}

impl ArbRun {
    pub fn palette(&self, class: u32) -> Palette {
        let i = class as usize;
        Palette {
            offset: self.palette_offsets[i],
            size: self.metrics.per_class_out_degree[i] + 1,
        }
    }
}

#[derive(Debug, Error)]
pub enum ArbError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error("{source}")]
    Stall {
        source: PeelError,
        metrics: Box<ArbMetrics>,
    },
}

/// Runs the coloring. Uses exactly `k` passes, where `k` is the number of
/// peeling rounds.
pub fn run_algorithm3(
    stream: &mut EdgeStream,
    alpha: u32,
    epsilon: f64,
    c: f64,
    seed: u64,
) -> Result<ArbRun, ArbError> {
    let n = stream.n();
    let config = ArbRunConfig::new(n, alpha, epsilon, c, seed)?;
    let params = config.params;
    let classes = draw_classes(n, params.ell, seed);
    let mut mono = MonochromeSubgraphs::new(classes.clone(), params.ell);
    let mut peeler = Peeler::new(n, alpha, params.gamma)?;
    let before = stream.passes();

    let mut m = 0;
    let mut outcome = Ok(());
    while !peeler.is_done() {
        let stats = if peeler.rounds() == 0 {
            stream.run_pass(&mut [&mut mono, &mut peeler])?
        } else {
            stream.run_pass(&mut [&mut peeler])?
        };
        if peeler.rounds() == 0 {
            m = stats.edges;
        }
        if let Err(e) = peeler.finish_round() {
            outcome = Err(e);
            break;
        }
    }

    if let Err(source) = outcome {
        let metrics = ArbMetrics {
            n,
            m,
            ell: params.ell,
            k: peeler.rounds(),
            passes: stream.passes() - before,
            colors_used: 0,
            per_class_out_degree: Vec::new(),
            peak_stored_edges: mono.graph.peak_stored_edges(),
            stalled: true,
            seed,
        };
        return Err(ArbError::Stall {
            source,
            metrics: Box::new(metrics),
        });
    }

    let layers = peeler.into_partition();
    let out_degree = compute_out_degrees(&mono, &layers);
    let mut palette_offsets = Vec::with_capacity(out_degree.len());
    let mut next: Color = 0;
    for &d in &out_degree {
        palette_offsets.push(next);
        next += d + 1;
    }

    let mut slots = vec![0u32; n];
    for (class, members) in mono.members().iter().enumerate() {
        dag_slots(
            &mono.graph,
            members,
            &layers,
            out_degree[class] + 1,
            &mut slots,
        )
        .expect("palette holds out-degree + 1 colors");
    }
    let assignment = slots
        .iter()
        .zip(&classes)
        .map(|(&s, &class)| palette_offsets[class as usize] + s)
        .collect();
    let coloring = Coloring::new(assignment, next);

    let metrics = ArbMetrics {
        n,
        m,
        ell: params.ell,
        k: layers.k(),
        passes: stream.passes() - before,
        colors_used: coloring.colors_used() as u64,
        per_class_out_degree: out_degree,
        peak_stored_edges: mono.graph.peak_stored_edges(),
        stalled: false,
        seed,
    };
    Ok(ArbRun {
        coloring,
        metrics,
        config,
        layers,
        classes,
        palette_offsets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{generate, Family, GenSpec};
    use crate::oracle::verify_proper;

    #[test]
    fn out_degree_of_single_edge_and_empty() {
        let mut mono = MonochromeSubgraphs::new(vec![0, 0, 0], 1);
        let lp = LayerPartition::from_layers(vec![1, 1, 1]);
        assert_eq!(compute_out_degrees(&mono, &lp), vec![0]);
        mono.edge(Edge::new(2, 1));
        assert_eq!(compute_out_degrees(&mono, &lp), vec![1]);
    }

    #[test]
    fn triangle_out_degrees() {
        let mut mono = MonochromeSubgraphs::new(vec![0, 0, 0], 1);
        for e in [Edge::new(0, 1), Edge::new(1, 2), Edge::new(2, 0)] {
            mono.edge(e);
        }
        let lp = LayerPartition::from_layers(vec![1, 1, 1]);
        let per_vertex = crate::peel::out_degrees(3, mono.graph().edges(), &lp);
        assert_eq!(per_vertex, vec![2, 1, 0]);
        assert_eq!(compute_out_degrees(&mono, &lp), vec![2]);
    }

    #[test]
    fn cross_class_edges_not_stored() {
        let mut mono = MonochromeSubgraphs::new(vec![0, 1, 0], 2);
        mono.edge(Edge::new(0, 1));
        mono.edge(Edge::new(0, 2));
        assert_eq!(mono.graph().stored_edges(), 1);
        assert_eq!(mono.members(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn dag_path_coloring() {
        let g = StoredGraph::from_edges(3, &[Edge::new(0, 1), Edge::new(1, 2)]);
        let lp = LayerPartition::from_layers(vec![1, 1, 1]);
        let c = offline_dag_color(&g, &lp, Palette { offset: 0, size: 2 }).unwrap();
        assert_eq!(c.assignment(), &[0, 1, 0]);
    }

    #[test]
    fn dag_single_vertex_and_offset() {
        let g = StoredGraph::new(1);
        let lp = LayerPartition::from_layers(vec![1]);
        let c = offline_dag_color(&g, &lp, Palette { offset: 7, size: 1 }).unwrap();
        assert_eq!(c.assignment(), &[7]);
    }

    #[test]
    fn dag_star_center_first_layer() {
        let edges: Vec<Edge> = (1..5).map(|v| Edge::new(0, v)).collect();
        let g = StoredGraph::from_edges(5, &edges);
        let lp = LayerPartition::from_layers(vec![1, 2, 2, 2, 2]);
        let c = offline_dag_color(&g, &lp, Palette { offset: 0, size: 5 }).unwrap();
        assert_eq!(c.assignment(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn dag_palette_too_small() {
        let g = StoredGraph::from_edges(3, &[Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]);
        let lp = LayerPartition::from_layers(vec![1, 1, 1]);
        let err = offline_dag_color(&g, &lp, Palette { offset: 0, size: 2 }).unwrap_err();
        assert_eq!(err.vertex, 0);
    }

    #[test]
    fn empty_graph_uses_one_color() {
        let mut s = EdgeStream::from_edges(8, Vec::<Edge>::new()).unwrap();
        let run = run_algorithm3(&mut s, 1, 0.5, 1.0, 0).unwrap();
        assert_eq!(run.metrics.colors_used, 1);
        assert_eq!(run.coloring.len(), 8);
        assert_eq!(run.metrics.passes, 1);
    }

    #[test]
    fn forest_union_small_budget() {
        let spec = GenSpec::forest_union(100, 2, 5);
        let g = generate(&spec).unwrap();
        let mut s = EdgeStream::from_edges(100, g.edges.clone()).unwrap();
        let run = run_algorithm3(&mut s, 2, 3.0, 1.0, 1).unwrap();
        assert_eq!(run.metrics.ell, 1);
        assert!(run.metrics.colors_used <= 7);
        let stored = StoredGraph::from_edges(100, &g.edges);
        assert!(verify_proper(&stored, &run.coloring).unwrap().is_empty());
        assert_eq!(run.metrics.passes, run.metrics.k as u64);
    }

    #[test]
    fn stall_reports_metrics() {
        let g = generate(&GenSpec::new(Family::Cycle, 5)).unwrap();
        let mut s = EdgeStream::from_edges(5, g.edges).unwrap();
        match run_algorithm3(&mut s, 0, 0.5, 1.0, 0) {
            Err(ArbError::Stall { source, metrics }) => {
                assert!(matches!(source, PeelError::Stall { round: 1, .. }));
                assert!(metrics.stalled);
                assert_eq!(metrics.passes, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
