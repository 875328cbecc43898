//! Multi-seed parameter sweeps.
//!
//! A sweep expands every cell of a [`SweepSpec`] into `epsilon x c x seeds`
//! runs. Each run writes `runs/<name>.json` holding its full configuration,
//! the algorithm metrics and its summary row; runs whose file already exists
//! are not repeated. `summary.csv` lists one row per run in grid order.
//!
//! The `bound` column is the per-class degree bound the high-probability
//! analysis promises (`floor((1+2/eps) c log n)` for `delta`,
//! `floor((1+1/eps') c log n)` with `eps' = eps/6` for `arb`), and
//! `within_bound` says whether the largest per-class degree (out-degree for
//! `arb`) stayed at or below it.

use std::collections::hash_map::DefaultHasher;
use std::fs;
use std::hash::{Hash, Hasher};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use streamcolor_core::arb::{run_algorithm3, ArbError};
use streamcolor_core::delta::{run_algorithm1, DeltaError};
use streamcolor_core::oracle::degeneracy;
use streamcolor_core::params::{floor_snapped, ArbParams, DeltaParams, DEFAULT_C};
use streamcolor_core::{generate, Coloring, Edge, EdgeStream, GenSpec, Generated, StoredGraph};

use crate::commands::write_json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Delta,
    Arb,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Delta => "delta",
            Algorithm::Arb => "arb",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRange {
    pub start: u64,
    pub count: u64,
}

/// One generated graph, one algorithm, and the grid to run on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub gen: GenSpec,
    pub algorithm: Algorithm,
    pub epsilon: Vec<f64>,
    #[serde(default = "default_c")]
    pub c: Vec<f64>,
    /// Delta for `delta` runs; the generated graph's maximum degree if absent.
    #[serde(default)]
    pub delta: Option<u32>,
    /// Alpha for `arb` runs; the generator's certified bound, else the
    /// degeneracy, if absent.
    #[serde(default)]
    pub alpha: Option<u32>,
    pub seeds: SeedRange,
}

fn default_c() -> Vec<f64> {
    vec![DEFAULT_C]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub cells: Vec<SweepCell>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

impl SweepSpec {
    pub fn grid_size(&self) -> u64 {
        self.cells
            .iter()
            .map(|c| (c.epsilon.len() * c.c.len()) as u64 * c.seeds.count)
            .sum()
    }
}

/// Everything needed to reproduce one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub gen: GenSpec,
    pub algorithm: Algorithm,
    pub epsilon: f64,
    pub c: f64,
    pub delta: Option<u32>,
    pub alpha: Option<u32>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub family: String,
    pub n: usize,
    pub m: u64,
    pub alpha: Option<u32>,
    pub delta: Option<u32>,
    pub epsilon: f64,
    pub c: f64,
    pub seed: u64,
    pub algorithm: String,
    pub passes: Option<u64>,
    pub colors_used: Option<u64>,
    pub bound: Option<u64>,
    pub within_bound: Option<bool>,
    pub peak_stored_edges: Option<u64>,
    pub aborted: bool,
}

/// Contents of one `runs/*.json` file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub config: RunConfig,
    pub row: SummaryRow,
    pub metrics: Option<serde_json::Value>,
    /// Digest of the coloring bytes, for replay checks.
    pub coloring_digest: Option<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepSummary {
    pub rows: u64,
    pub reused: u64,
    pub failed: u64,
}

/// Digest of the text form of a coloring.
pub fn coloring_digest(c: &Coloring) -> String {
    let mut bytes = Vec::new();
    c.write_to(&mut bytes).expect("in-memory write");
    let mut h = DefaultHasher::new();
    bytes.hash(&mut h);
    format!("{:016x}", h.finish())
}

struct Instance {
    generated: Generated,
    edges: Arc<[Edge]>,
}

impl Instance {
    fn new(spec: &GenSpec) -> Result<Self> {
        let generated = generate(spec)?;
        let edges = generated.edges.clone().into();
        Ok(Instance { generated, edges })
    }

    fn stream(&self) -> EdgeStream {
        EdgeStream::from_edges(self.generated.meta.n, self.edges.clone())
            .expect("generated graphs are valid")
    }

    fn max_degree(&self) -> u32 {
        self.generated.meta.max_degree.unwrap_or(0)
    }

    fn alpha(&self) -> u32 {
        self.generated.arboricity_bound.unwrap_or_else(|| {
            let g = StoredGraph::from_edges(self.generated.meta.n, &self.generated.edges);
            degeneracy(&g).d
        })
    }
}

fn blank_row(config: &RunConfig, m: u64) -> SummaryRow {
    SummaryRow {
        family: config.gen.family.to_string(),
        n: config.gen.n,
        m,
        alpha: config.alpha,
        delta: config.delta,
        epsilon: config.epsilon,
        c: config.c,
        seed: config.seed,
        algorithm: config.algorithm.name().to_string(),
        passes: None,
        colors_used: None,
        bound: None,
        within_bound: None,
        peak_stored_edges: None,
        aborted: true,
    }
}

/// Runs one configuration. Algorithm failures become rows with
/// `aborted = true`; only generator errors are returned as `Err`.
pub fn run_one(config: &RunConfig) -> Result<(RunRecord, Option<Coloring>)> {
    let instance = Instance::new(&config.gen)?;
    Ok(run_on(config, &instance))
}

fn run_on(config: &RunConfig, inst: &Instance) -> (RunRecord, Option<Coloring>) {
    let mut config = config.clone();
    let m = inst.edges.len() as u64;
    let mut stream = inst.stream();
    let n = inst.generated.meta.n;
    match config.algorithm {
        Algorithm::Delta => {
            let delta = *config.delta.get_or_insert_with(|| inst.max_degree());
            if config.alpha.is_none() {
                config.alpha = inst.generated.arboricity_bound;
            }
            let bound = DeltaParams::new(n, delta, config.epsilon, config.c)
                .ok()
                .map(|p| floor_snapped(p.class_degree_bound()));
            let mut row = blank_row(&config, m);
            row.bound = bound;
            match run_algorithm1(&mut stream, delta, config.epsilon, config.c, config.seed) {
                Ok(run) => {
                    let mm = &run.metrics;
                    row.passes = Some(mm.passes);
                    row.colors_used = Some(mm.colors_used);
                    row.within_bound = bound.map(|b| mm.max_class_degree as u64 <= b);
                    row.peak_stored_edges = Some(mm.peak_stored_edges);
                    row.aborted = false;
                    let record = RunRecord {
                        metrics: serde_json::to_value(mm).ok(),
                        coloring_digest: Some(coloring_digest(&run.coloring)),
                        config,
                        row,
                        error: None,
                    };
                    (record, Some(run.coloring))
                }
                Err(DeltaError::Abort { abort, metrics }) => {
                    row.passes = Some(metrics.passes);
                    row.within_bound = Some(false);
                    row.peak_stored_edges = Some(metrics.peak_stored_edges);
                    let record = RunRecord {
                        metrics: serde_json::to_value(&metrics).ok(),
                        coloring_digest: None,
                        config,
                        row,
                        error: Some(abort.to_string()),
                    };
                    (record, None)
                }
                Err(e) => failed(config, row, e.to_string()),
            }
        }
        Algorithm::Arb => {
            let alpha = *config.alpha.get_or_insert_with(|| inst.alpha());
            if config.delta.is_none() {
                config.delta = Some(inst.max_degree());
            }
            let bound = ArbParams::new(n, alpha, config.epsilon, config.c)
                .ok()
                .map(|p| floor_snapped(p.out_degree_bound()));
            let mut row = blank_row(&config, m);
            row.bound = bound;
            match run_algorithm3(&mut stream, alpha, config.epsilon, config.c, config.seed) {
                Ok(run) => {
                    let mm = &run.metrics;
                    let worst = mm.per_class_out_degree.iter().copied().max().unwrap_or(0);
                    row.passes = Some(mm.passes);
                    row.colors_used = Some(mm.colors_used);
                    row.within_bound = bound.map(|b| worst as u64 <= b);
                    row.peak_stored_edges = Some(mm.peak_stored_edges);
                    row.aborted = false;
                    let record = RunRecord {
                        metrics: serde_json::to_value(mm).ok(),
                        coloring_digest: Some(coloring_digest(&run.coloring)),
                        config,
                        row,
                        error: None,
                    };
                    (record, Some(run.coloring))
                }
                Err(ArbError::Stall { source, metrics }) => {
                    row.passes = Some(metrics.passes);
                    row.peak_stored_edges = Some(metrics.peak_stored_edges);
                    let record = RunRecord {
                        metrics: serde_json::to_value(&metrics).ok(),
                        coloring_digest: None,
                        config,
                        row,
                        error: Some(source.to_string()),
                    };
                    (record, None)
                }
                Err(e) => failed(config, row, e.to_string()),
            }
        }
    }
}

fn failed(config: RunConfig, row: SummaryRow, error: String) -> (RunRecord, Option<Coloring>) {
    let record = RunRecord {
        config,
        row,
        metrics: None,
        coloring_digest: None,
        error: Some(error),
    };
    (record, None)
}

fn run_file_name(cell: usize, algorithm: Algorithm, ei: usize, ci: usize, seed: u64) -> String {
    format!(
        "run-{cell:03}-{}-e{ei}-c{ci}-s{seed}.json",
        algorithm.name()
    )
}

fn read_record(path: &Path) -> Option<RunRecord> {
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

/// Runs the grid into `out` (falling back to `spec.output_dir`) and writes
/// `summary.csv`.
pub fn run_sweep(spec: &SweepSpec, out: &Path) -> Result<SweepSummary> {
    let runs_dir = out.join("runs");
    fs::create_dir_all(&runs_dir)
        .with_context(|| format!("cannot create {}", runs_dir.display()))?;
    let mut rows = Vec::with_capacity(spec.grid_size() as usize);
    let mut summary = SweepSummary::default();

    for (ci, cell) in spec.cells.iter().enumerate() {
        let mut instance: Option<Result<Instance, String>> = None;
        for (ei, &epsilon) in cell.epsilon.iter().enumerate() {
            for (cj, &c) in cell.c.iter().enumerate() {
                for seed in cell.seeds.start..cell.seeds.start + cell.seeds.count {
                    let path = runs_dir.join(run_file_name(ci, cell.algorithm, ei, cj, seed));
                    let config = RunConfig {
                        gen: cell.gen.clone(),
                        algorithm: cell.algorithm,
                        epsilon,
                        c,
                        delta: cell.delta,
                        alpha: cell.alpha,
                        seed,
                    };
                    if let Some(record) = read_record(&path)
                        .filter(|r| r.config.gen == config.gen && r.config.seed == seed)
                    {
                        summary.reused += 1;
                        summary.failed += record.row.aborted as u64;
                        rows.push(record.row);
                        continue;
                    }
                    let inst = instance
                        .get_or_insert_with(|| Instance::new(&cell.gen).map_err(|e| e.to_string()));
                    let record = match inst {
                        Ok(inst) => run_on(&config, inst).0,
                        Err(msg) => {
                            let row = blank_row(&config, 0);
                            failed(config, row, msg.clone()).0
                        }
                    };
                    summary.failed += record.row.aborted as u64;
                    write_json(&path, &record)?;
                    rows.push(record.row);
                }
            }
        }
    }

    let csv_path = out.join("summary.csv");
    let mut w = csv::Writer::from_path(&csv_path)
        .with_context(|| format!("cannot create {}", csv_path.display()))?;
    for row in &rows {
        w.serialize(row)?;
    }
    w.flush()?;
    summary.rows = rows.len() as u64;
    Ok(summary)
}

/// Reads `summary.csv` back.
pub fn read_summary(path: &Path) -> Result<Vec<SummaryRow>> {
    let mut r =
        csv::Reader::from_path(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}
