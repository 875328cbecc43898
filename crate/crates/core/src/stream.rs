//! Multi-pass edge streams.
//!
//! An [`EdgeStream`] is a re-traversable, fixed-order edge source. Each call
//! to [`EdgeStream::run_pass`] is one full traversal that fans every edge out
//! to all registered [`EdgeSink`]s, in stream order, and bumps the pass
//! counter by exactly one. File-backed streams re-open and re-parse the file
//! on every pass; nothing is cached between passes.
//!
//! # Edge-list format
//!
//! ```text
//! # comment
//! <n> <m>
//! <u> <v>
//! ...
//! ```
//!
//! `m` may be `0` when the edge count is unknown. Blank lines and lines
//! starting with `#` are ignored. Self-loops and endpoints `>= n` are
//! rejected with the offending line number.

use std::collections::hash_map::DefaultHasher;
use std::fs::File;
use std::hash::Hasher;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Edge, StreamMeta, VertexId};

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: missing `<n> <m>` header")]
    MissingHeader { line: usize },
    #[error("line {line}: malformed line {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: VertexId },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    OutOfRange { line: usize, vertex: u64, n: usize },
    #[error("header declares {declared} edges but the source holds {found}")]
    EdgeCount { declared: u64, found: u64 },
}

/// Receives the edges of one pass, in stream order.
pub trait EdgeSink {
    fn edge(&mut self, e: Edge);
}

impl<F: FnMut(Edge)> EdgeSink for F {
    fn edge(&mut self, e: Edge) {
        self(e)
    }
}

/// What one traversal delivered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PassStats {
    pub edges: u64,
    /// Order-sensitive digest of the delivered sequence.
    pub digest: u64,
}

#[derive(Debug, Clone)]
enum Source {
    Memory(Arc<[Edge]>),
    File(PathBuf),
}

/// A fixed-order edge stream with pass accounting.
#[derive(Debug, Clone)]
pub struct EdgeStream {
    n: usize,
    m: u64,
    source: Source,
    passes: u64,
}

impl EdgeStream {
    /// Opens and validates an edge-list file. The validation scan is not
    /// counted as a pass.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, StreamError> {
        let path = path.as_ref().to_path_buf();
        let file = File::open(&path).map_err(|source| StreamError::Io {
            path: path.clone(),
            source,
        })?;
        let mut reader = EdgeListReader::new(BufReader::new(file), path.clone())?;
        let mut found = 0u64;
        while reader.next_edge()?.is_some() {
            found += 1;
        }
        let m = match reader.declared_m {
            0 => found,
            declared if declared != found => {
                return Err(StreamError::EdgeCount { declared, found })
            }
            declared => declared,
        };
        Ok(EdgeStream {
            n: reader.n,
            m,
            source: Source::File(path),
            passes: 0,
        })
    }

    /// Wraps an in-memory edge list, applying the same checks as the file
    /// parser (line numbers are 1-based edge positions).
    pub fn from_edges(n: usize, edges: impl Into<Arc<[Edge]>>) -> Result<Self, StreamError> {
        let edges = edges.into();
        for (i, e) in edges.iter().enumerate() {
            check_edge(*e, n, i + 1)?;
        }
        Ok(EdgeStream {
            n,
            m: edges.len() as u64,
            source: Source::Memory(edges),
            passes: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn meta(&self) -> StreamMeta {
        StreamMeta {
            n: self.n,
            m: Some(self.m),
            max_degree: None,
        }
    }

    /// Number of completed traversals.
    pub fn passes(&self) -> u64 {
        self.passes
    }

    /// One full traversal: every sink sees every edge exactly once, in
    /// stream order. The pass counter is bumped even for an empty stream.
    pub fn run_pass(&mut self, sinks: &mut [&mut dyn EdgeSink]) -> Result<PassStats, StreamError> {
        let mut hasher = DefaultHasher::new();
        let mut edges = 0u64;
        let mut deliver = |e: Edge| {
            hasher.write_u32(e.u);
            hasher.write_u32(e.v);
            edges += 1;
            for sink in sinks.iter_mut() {
                sink.edge(e);
            }
        };
        match &self.source {
            Source::Memory(list) => list.iter().copied().for_each(&mut deliver),
            Source::File(path) => {
                let file = File::open(path).map_err(|source| StreamError::Io {
                    path: path.clone(),
                    source,
                })?;
                let mut reader = EdgeListReader::new(BufReader::new(file), path.clone())?;
                while let Some(e) = reader.next_edge()? {
                    deliver(e);
                }
            }
        }
        self.passes += 1;
        Ok(PassStats {
            edges,
            digest: hasher.finish(),
        })
    }

    /// Collects one pass into memory. Counts as a pass.
    pub fn collect_edges(&mut self) -> Result<Vec<Edge>, StreamError> {
        let mut out = Vec::with_capacity(self.m as usize);
        self.run_pass(&mut [&mut |e: Edge| out.push(e)])?;
        Ok(out)
    }
}

/// Exact maximum degree in one pass with `n` counters. Duplicate stream
/// edges count once per occurrence.
pub fn measure_max_degree(stream: &mut EdgeStream) -> Result<u32, StreamError> {
    let mut deg = vec![0u32; stream.n()];
    stream.run_pass(&mut [&mut |e: Edge| {
        deg[e.u as usize] += 1;
        deg[e.v as usize] += 1;
    }])?;
    Ok(deg.into_iter().max().unwrap_or(0))
}

fn check_edge(e: Edge, n: usize, line: usize) -> Result<Edge, StreamError> {
    for x in [e.u, e.v] {
        if x as usize >= n {
            return Err(StreamError::OutOfRange {
                line,
                vertex: x as u64,
                n,
            });
        }
    }
    if e.is_loop() {
        return Err(StreamError::SelfLoop { line, vertex: e.u });
    }
    Ok(e)
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

fn two_fields(text: &str) -> Option<(u64, u64)> {
    let mut it = text.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// Line-oriented parser for the edge-list format.
struct EdgeListReader<R> {
    inner: R,
    path: PathBuf,
    buf: String,
    line: usize,
    n: usize,
    declared_m: u64,
}

impl<R: BufRead> EdgeListReader<R> {
    fn new(inner: R, path: PathBuf) -> Result<Self, StreamError> {
        let mut reader = EdgeListReader {
            inner,
            path,
            buf: String::new(),
            line: 0,
            n: 0,
            declared_m: 0,
        };
        if !reader.next_content_line()? {
            return Err(StreamError::MissingHeader { line: reader.line });
        }
        let (n, m) =
            two_fields(&reader.buf).ok_or(StreamError::MissingHeader { line: reader.line })?;
        reader.n = usize::try_from(n).map_err(|_| StreamError::Malformed {
            line: reader.line,
            text: reader.buf.trim().to_string(),
        })?;
        reader.declared_m = m;
        Ok(reader)
    }

    fn next_content_line(&mut self) -> Result<bool, StreamError> {
        loop {
            self.buf.clear();
            let read = self
                .inner
                .read_line(&mut self.buf)
                .map_err(|source| StreamError::Io {
                    path: self.path.clone(),
                    source,
                })?;
            if read == 0 {
                return Ok(false);
            }
            self.line += 1;
            if !is_skippable(&self.buf) {
                return Ok(true);
            }
        }
    }

    fn next_edge(&mut self) -> Result<Option<Edge>, StreamError> {
        if !self.next_content_line()? {
            return Ok(None);
        }
        let (u, v) = two_fields(&self.buf).ok_or_else(|| StreamError::Malformed {
            line: self.line,
            text: self.buf.trim().to_string(),
        })?;
        for x in [u, v] {
            if x >= self.n as u64 {
                return Err(StreamError::OutOfRange {
                    line: self.line,
                    vertex: x,
                    n: self.n,
                });
            }
        }
        check_edge(Edge::new(u as VertexId, v as VertexId), self.n, self.line).map(Some)
    }
}

/// Parses a whole edge list held in memory (or any reader).
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<(usize, Vec<Edge>), StreamError> {
    let mut r = EdgeListReader::new(reader, PathBuf::from("<input>"))?;
    let mut edges = Vec::new();
    while let Some(e) = r.next_edge()? {
        edges.push(e);
    }
    if r.declared_m != 0 && r.declared_m != edges.len() as u64 {
        return Err(StreamError::EdgeCount {
            declared: r.declared_m,
            found: edges.len() as u64,
        });
    }
    Ok((r.n, edges))
}

/// Writes the edge-list format with an exact edge count in the header.
pub fn write_edge_list<W: Write>(mut w: W, n: usize, edges: &[Edge]) -> io::Result<()> {
    writeln!(w, "{} {}", n, edges.len())?;
    for e in edges {
        writeln!(w, "{} {}", e.u, e.v)?;
    }
    w.flush()
}
