use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use streamcolor_core::arb::{run_algorithm3, ArbError};
use streamcolor_core::delta::{run_algorithm1, DeltaError};
use streamcolor_core::oracle::{
    degeneracy, greedy_color, nash_williams_arboricity, verify_proper_stream,
};
use streamcolor_core::params::DEFAULT_C;
use streamcolor_core::peel::{peel, PeelError};
use streamcolor_core::stream::write_edge_list;
use streamcolor_core::{
    generate, measure_max_degree, Coloring, EdgeStream, Family, GenSpec, Order, StoredGraph,
};

use crate::sweep::{run_sweep, SweepSpec};
use crate::{EXIT_ALGORITHM, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};

#[derive(Debug, Parser)]
#[command(
    name = "streamcolor",
    version,
    about = "Semi-streaming vertex coloring toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded test graph in edge-list format.
    Gen(GenArgs),
    /// Print the maximum degree (one pass).
    Maxdeg {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// One-pass (1+eps)Delta coloring.
    ColorDelta(DeltaArgs),
    /// Degree peeling into layers; one pass per round.
    Peel(PeelArgs),
    /// (2+eps)alpha coloring.
    ColorArb(ArbArgs),
    /// Check a coloring against a graph; exits 1 on conflicts.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        coloring: PathBuf,
    },
    /// Offline ground-truth queries.
    Oracle {
        #[arg(value_enum)]
        query: OracleQuery,
        #[arg(short, long)]
        input: PathBuf,
        /// Degeneracy order or greedy coloring destination (default stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a parameter grid and write per-run metrics plus summary.csv.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        /// Output directory; overrides `output_dir` in the spec file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OracleQuery {
    Arboricity,
    Degeneracy,
    Greedy,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub m: u64,
    #[arg(long, default_value_t = 0)]
    pub alpha: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_parser = parse_order, default_value = "as-generated")]
    pub order: Order,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// Maximum degree (or an upper bound). Measured with an extra pass when
    /// omitted.
    #[arg(long)]
    pub delta: Option<u32>,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_C)]
    pub c: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub metrics: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PeelArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long)]
    pub alpha: u32,
    #[arg(long)]
    pub gamma: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ArbArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long)]
    pub alpha: u32,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_C)]
    pub c: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub metrics: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_order(s: &str) -> Result<Order, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn open_graph(path: &Path) -> Result<EdgeStream> {
    EdgeStream::open(path).with_context(|| format!("reading {}", path.display()))
}

fn stored_graph(stream: &mut EdgeStream) -> Result<StoredGraph> {
    let edges = stream.collect_edges()?;
    Ok(StoredGraph::from_edges(stream.n(), &edges))
}

fn execute(command: Command) -> Result<u8> {
    match command {
        Command::Gen(args) => {
            let spec = GenSpec {
                family: args.family,
                n: args.n,
                m: args.m,
                alpha: args.alpha,
                seed: args.seed,
                order: args.order,
            };
            let g = generate(&spec)?;
            write_edge_list(output(args.output.as_deref())?, spec.n, &g.edges)?;
            Ok(EXIT_OK)
        }
        Command::Maxdeg { input } => {
            let mut stream = open_graph(&input)?;
            println!("{}", measure_max_degree(&mut stream)?);
            Ok(EXIT_OK)
        }
        Command::ColorDelta(args) => color_delta(args),
        Command::Peel(args) => {
            let mut stream = open_graph(&args.input)?;
            match peel(&mut stream, args.alpha, args.gamma) {
                Ok(out) => {
                    let mut w = output(args.output.as_deref())?;
                    for (v, l) in out.partition.layers().iter().enumerate() {
                        writeln!(w, "{v} {l}")?;
                    }
                    w.flush()?;
                    eprintln!("k = {} layers in {} passes", out.partition.k(), out.passes);
                    Ok(EXIT_OK)
                }
                Err(e @ PeelError::Stall { .. }) => {
                    eprintln!("stall: {e}");
                    Ok(EXIT_ALGORITHM)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::ColorArb(args) => color_arb(args),
        Command::Verify { input, coloring } => {
            let mut stream = open_graph(&input)?;
            let file = File::open(&coloring)
                .with_context(|| format!("cannot open {}", coloring.display()))?;
            let c = Coloring::read_from(BufReader::new(file), stream.n())
                .with_context(|| format!("reading {}", coloring.display()))?;
            let bad = verify_proper_stream(&mut stream, &c)?;
            if bad.is_empty() {
                println!("proper: {} vertices, {} colors", c.len(), c.colors_used());
                return Ok(EXIT_OK);
            }
            for e in &bad {
                println!("conflict {} {} color {}", e.u, e.v, c.color(e.u));
            }
            eprintln!("{} conflicting edges", bad.len());
            Ok(EXIT_VIOLATION)
        }
        Command::Oracle {
            query,
            input,
            output: out,
        } => {
            let mut stream = open_graph(&input)?;
            let g = stored_graph(&mut stream)?;
            match query {
                OracleQuery::Arboricity => println!("{}", nash_williams_arboricity(&g)?),
                OracleQuery::Degeneracy => {
                    let d = degeneracy(&g);
                    println!("{}", d.d);
                    if let Some(path) = out {
                        let mut w = create(&path)?;
                        for v in &d.order {
                            writeln!(w, "{v}")?;
                        }
                        w.flush()?;
                    }
                }
                OracleQuery::Greedy => {
                    let d = degeneracy(&g);
                    let c = greedy_color(&g, &d.coloring_order())?;
                    c.write_to(output(out.as_deref())?)?;
                    eprintln!("{} colors (degeneracy {})", c.colors_used(), d.d);
                }
            }
            Ok(EXIT_OK)
        }
        Command::Sweep { spec, out } => {
            let text = std::fs::read_to_string(&spec)
                .with_context(|| format!("cannot read {}", spec.display()))?;
            let spec: SweepSpec = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", spec.display()))?;
            let out = out
                .or_else(|| spec.output_dir.clone())
                .context("no output directory: pass --out or set output_dir")?;
            let summary = run_sweep(&spec, &out)?;
            eprintln!(
                "{} rows ({} reused, {} failed) -> {}",
                summary.rows,
                summary.reused,
                summary.failed,
                out.join("summary.csv").display()
            );
            Ok(EXIT_OK)
        }
    }
}

fn color_delta(args: DeltaArgs) -> Result<u8> {
    let mut stream = open_graph(&args.input)?;
    let delta = match args.delta {
        Some(d) => d,
        None => measure_max_degree(&mut stream)?,
    };
    match run_algorithm1(&mut stream, delta, args.epsilon, args.c, args.seed) {
        Ok(run) => {
            run.coloring.write_to(output(args.output.as_deref())?)?;
            if let Some(path) = &args.metrics {
                write_json(path, &run.metrics)?;
            }
            Ok(EXIT_OK)
        }
        Err(DeltaError::Abort { abort, metrics }) => {
            if let Some(path) = &args.metrics {
                write_json(path, &metrics)?;
            }
            eprintln!("{abort}");
            Ok(EXIT_ALGORITHM)
        }
        Err(e) => Err(e.into()),
    }
}

fn color_arb(args: ArbArgs) -> Result<u8> {
    let mut stream = open_graph(&args.input)?;
    match run_algorithm3(&mut stream, args.alpha, args.epsilon, args.c, args.seed) {
        Ok(run) => {
            run.coloring.write_to(output(args.output.as_deref())?)?;
            if let Some(path) = &args.metrics {
                write_json(path, &run.metrics)?;
            }
            Ok(EXIT_OK)
        }
        Err(ArbError::Stall { source, metrics }) => {
            if let Some(path) = &args.metrics {
                write_json(path, &metrics)?;
            }
            eprintln!("stall: {source}");
            Ok(EXIT_ALGORITHM)
        }
        Err(e) => Err(e.into()),
    }
}
