//! Semi-streaming vertex coloring.
//!
//! * [`delta`]: one-pass randomized `(1+eps)Delta` coloring.
//! * [`peel`]: multi-pass degree peeling into layers, giving an implicit
//!   acyclic orientation with out-degree at most `(2+gamma)alpha`.
//! * [`arb`]: `(2+eps)alpha` coloring built on the two above.
//!
//! Graph input is an [`EdgeStream`]: a fixed-order, re-traversable edge
//! source that counts its passes. [`oracle`] holds the offline checks and
//! [`corpus`] the seeded generators used to drive everything.

pub mod arb;
pub mod coloring;
pub mod corpus;
pub mod delta;
pub mod graph;
pub mod oracle;
pub mod params;
pub mod peel;
pub mod seed;
pub mod stored;
pub mod stream;

pub use coloring::Coloring;
pub use corpus::{generate, Family, GenSpec, Generated, Order};
pub use graph::{Color, Edge, StreamMeta, VertexId};
pub use stored::StoredGraph;
pub use stream::{measure_max_degree, EdgeSink, EdgeStream, PassStats, StreamError};
