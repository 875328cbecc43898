//! Shared fixtures for the criterion benchmarks.

use streamcolor_core::{generate, EdgeStream, GenSpec, Generated};

/// Generates `spec` and wraps it as an in-memory stream.
pub fn fixture(spec: &GenSpec) -> (Generated, EdgeStream) {
    let g = generate(spec).expect("benchmark spec is feasible");
    let stream =
        EdgeStream::from_edges(spec.n, g.edges.clone()).expect("generated graphs are valid");
    (g, stream)
}
