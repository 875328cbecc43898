//! Seeded test-graph generators with known maximum degree and certified
//! arboricity upper bounds, plus arrival-order shufflers.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{max_degree_of, Edge, StreamMeta, VertexId};
use crate::seed::{rng_for, Purpose};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Gnm,
    ForestUnion,
    Complete,
    Star,
    Cycle,
    Path,
    Petersen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Order {
    #[default]
    AsGenerated,
    Random,
    SortedByEndpoint,
    LayeredAdversarial,
}

macro_rules! kebab_names {
    ($ty:ty { $($variant:ident => $name:literal),* $(,)? }) => {
        impl $ty {
            pub const ALL: &'static [$ty] = &[$(<$ty>::$variant),*];

            pub fn name(self) -> &'static str {
                match self {
                    $(<$ty>::$variant => $name),*
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $ty {
            type Err = GenError;

            fn from_str(s: &str) -> Result<Self, GenError> {
                match s {
                    $($name => Ok(<$ty>::$variant),)*
                    other => Err(GenError::UnknownName(other.to_string())),
                }
            }
        }
    };
}

kebab_names!(Family {
    Gnm => "gnm",
    ForestUnion => "forest-union",
    Complete => "complete",
    Star => "star",
    Cycle => "cycle",
    Path => "path",
    Petersen => "petersen",
});

kebab_names!(Order {
    AsGenerated => "as-generated",
    Random => "random",
    SortedByEndpoint => "sorted-by-endpoint",
    LayeredAdversarial => "layered-adversarial",
});

/// What to generate. `m` is read only by `gnm`, `alpha` only by
/// `forest-union`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    #[serde(default)]
    pub m: u64,
    #[serde(default)]
    pub alpha: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub order: Order,
}

impl GenSpec {
    pub fn new(family: Family, n: usize) -> Self {
        GenSpec {
            family,
            n,
            m: 0,
            alpha: 0,
            seed: 0,
            order: Order::AsGenerated,
        }
    }

    pub fn gnm(n: usize, m: u64, seed: u64) -> Self {
        GenSpec {
            m,
            seed,
            ..GenSpec::new(Family::Gnm, n)
        }
    }

    pub fn forest_union(n: usize, alpha: u32, seed: u64) -> Self {
        GenSpec {
            alpha,
            seed,
            ..GenSpec::new(Family::ForestUnion, n)
        }
    }

    pub fn with_order(mut self, order: Order) -> Self {
        self.order = order;
        self
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("gnm: m = {m} exceeds n(n-1)/2 = {max} for n = {n}")]
    TooManyEdges { n: usize, m: u64, max: u64 },
    #[error("{family}: {reason}")]
    Infeasible { family: Family, reason: String },
    #[error("unknown name {0:?}")]
    UnknownName(String),
}

/// A generated instance.
#[derive(Debug, Clone)]
pub struct Generated {
    pub edges: Vec<Edge>,
    pub meta: StreamMeta,
    /// Arboricity upper bound known by construction, when the family has one.
    pub arboricity_bound: Option<u32>,
}

/// Deterministic for a fixed spec. Output graphs are simple.
pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    let n = spec.n;
    let infeasible = |reason: &str| GenError::Infeasible {
        family: spec.family,
        reason: reason.to_string(),
    };
    if n > VertexId::MAX as usize {
        return Err(infeasible("n does not fit a 32-bit vertex id"));
    }
    let mut rng = rng_for(spec.seed, Purpose::Generate);
    let (edges, arboricity_bound) = match spec.family {
        Family::Gnm => (gnm(n, spec.m, &mut rng)?, None),
        Family::ForestUnion => {
            if spec.alpha == 0 {
                return Err(infeasible("alpha must be at least 1"));
            }
            let forests = forest_union(n, spec.alpha, &mut rng);
            (forests.concat(), Some(spec.alpha))
        }
        Family::Complete => {
            let edges = (0..n as VertexId)
                .flat_map(|u| (u + 1..n as VertexId).map(move |v| Edge::new(u, v)))
                .collect();
            (edges, Some((n as u32).div_ceil(2)))
        }
        Family::Star => {
            if n == 0 {
                return Err(infeasible("a star needs a center vertex"));
            }
            (
                (1..n as VertexId).map(|v| Edge::new(0, v)).collect(),
                Some(1),
            )
        }
        Family::Path => (
            (1..n.max(1) as VertexId)
                .map(|v| Edge::new(v - 1, v))
                .collect(),
            Some(1),
        ),
        Family::Cycle => {
            if n < 3 {
                return Err(infeasible("a cycle needs n >= 3"));
            }
            let n = n as VertexId;
            ((0..n).map(|v| Edge::new(v, (v + 1) % n)).collect(), Some(2))
        }
        Family::Petersen => {
            if n != 10 {
                return Err(infeasible("the Petersen graph has n = 10"));
            }
            (petersen(), Some(2))
        }
    };
    let edges = shuffle_order(edges, spec.order, spec.seed);
    let meta = StreamMeta {
        n,
        m: Some(edges.len() as u64),
        max_degree: Some(max_degree_of(n, &edges)),
    };
    Ok(Generated {
        edges,
        meta,
        arboricity_bound,
    })
}

/// Outer 5-cycle `0..5`, spokes `i -- i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Vec<Edge> {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push(Edge::new(i, (i + 1) % 5));
        edges.push(Edge::new(i, i + 5));
        edges.push(Edge::new(5 + i, 5 + (i + 2) % 5));
    }
    edges
}

fn random_pair(n: usize, rng: &mut impl Rng) -> Edge {
    let u = rng.random_range(0..n as VertexId);
    let mut v = rng.random_range(0..n as VertexId - 1);
    if v >= u {
        v += 1;
    }
    Edge::new(u, v)
}

fn gnm(n: usize, m: u64, rng: &mut impl Rng) -> Result<Vec<Edge>, GenError> {
    let max = (n as u64) * (n as u64).saturating_sub(1) / 2;
    if m > max {
        return Err(GenError::TooManyEdges { n, m, max });
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    // Dense requests sample the complement instead.
    let complement = m > max / 2;
    let want = if complement { max - m } else { m } as usize;
    let mut seen = HashSet::with_capacity(want);
    let mut picked = Vec::with_capacity(want);
    while picked.len() < want {
        let e = random_pair(n, rng);
        if seen.insert(e.key()) {
            picked.push(e);
        }
    }
    if !complement {
        return Ok(picked);
    }
    Ok((0..n as VertexId)
        .flat_map(|u| (u + 1..n as VertexId).map(move |v| Edge::new(u, v)))
        .filter(|e| !seen.contains(&e.key()))
        .collect())
}

/// The forests behind a `forest-union` spec, in generation order (before any
/// arrival-order shuffle). Their union is exactly the generated edge set and
/// each one is acyclic, which certifies arboricity `<= alpha`.
pub fn forest_union_certificate(spec: &GenSpec) -> Vec<Vec<Edge>> {
    forest_union(
        spec.n,
        spec.alpha,
        &mut rng_for(spec.seed, Purpose::Generate),
    )
}

/// `alpha` random spanning forests. Each forest runs randomized Kruskal over
/// uniformly sampled vertex pairs until it spans; an edge already taken by an
/// earlier forest is left out of later ones.
fn forest_union(n: usize, alpha: u32, rng: &mut impl Rng) -> Vec<Vec<Edge>> {
    let mut seen = HashSet::new();
    let mut forests = Vec::with_capacity(alpha as usize);
    if n < 2 {
        return forests;
    }
    for _ in 0..alpha {
        let mut dsu = DisjointSets::new(n);
        let mut forest = Vec::with_capacity(n - 1);
        let mut joined = 0;
        while joined + 1 < n {
            let e = random_pair(n, rng);
            if dsu.union(e.u, e.v) {
                joined += 1;
                if seen.insert(e.key()) {
                    forest.push(e);
                }
            }
        }
        forests.push(forest);
    }
    forests
}

struct DisjointSets {
    parent: Vec<VertexId>,
    size: Vec<u32>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as VertexId).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: VertexId) -> VertexId {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: VertexId, b: VertexId) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        true
    }
}

/// Reorders an edge list. Endpoint order within each edge is preserved.
///
/// `layered-adversarial` is a stable sort by the larger endpoint degree, so
/// the edges touching the highest-degree vertices arrive last.
pub fn shuffle_order(mut edges: Vec<Edge>, order: Order, seed: u64) -> Vec<Edge> {
    match order {
        Order::AsGenerated => {}
        Order::Random => edges.shuffle(&mut rng_for(seed, Purpose::Order)),
        Order::SortedByEndpoint => edges.sort_by_key(Edge::key),
        Order::LayeredAdversarial => {
            let n = edges
                .iter()
                .map(|e| e.u.max(e.v) as usize + 1)
                .max()
                .unwrap_or(0);
            let mut deg = vec![0u32; n];
            for e in &edges {
                deg[e.u as usize] += 1;
                deg[e.v as usize] += 1;
            }
            edges.sort_by_key(|e| deg[e.u as usize].max(deg[e.v as usize]));
        }
    }
    edges
}
