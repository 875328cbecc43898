use streamcolor_core::arb::run_algorithm3;
use streamcolor_core::oracle::verify_proper;
use streamcolor_core::params::ArbParams;
use streamcolor_core::{generate, EdgeStream, GenSpec, Order, StoredGraph};

#[test]
fn forest_union_alpha_64_concentrates() {
    let n = 1 << 14;
    let alpha = 64;
    let bound = ArbParams::new(n, alpha, 0.5, 1.0)
        .unwrap()
        .out_degree_bound();
    let g = generate(&GenSpec::forest_union(n, alpha, 21)).unwrap();
    let stored = StoredGraph::from_edges(n, &g.edges);
    let mut stream = EdgeStream::from_edges(n, g.edges).unwrap();
    for seed in 0..10 {
        let run = run_algorithm3(&mut stream, alpha, 0.5, 1.0, seed).unwrap();
        assert!(verify_proper(&stored, &run.coloring).unwrap().is_empty());
        let worst = *run.metrics.per_class_out_degree.iter().max().unwrap();
        assert!(worst as f64 <= bound, "seed {seed}: {worst} > {bound}");
        let budget = run.metrics.ell as u64 * (worst as u64 + 1);
        assert!(run.metrics.colors_used <= budget);
    }
}

#[test]
fn palettes_are_disjoint_and_sized() {
    let n = 1 << 12;
    let g = generate(&GenSpec::forest_union(n, 150, 2)).unwrap();
    let mut stream = EdgeStream::from_edges(n, g.edges).unwrap();
    let run = run_algorithm3(&mut stream, 150, 0.5, 1.0, 5).unwrap();
    assert!(run.metrics.ell > 1);
    let mut next = 0;
    for class in 0..run.metrics.ell {
        let p = run.palette(class);
        assert_eq!(p.offset, next);
        next += p.size;
    }
    for v in 0..n as u32 {
        let p = run.palette(run.classes[v as usize]);
        let c = run.coloring.color(v);
        assert!(c >= p.offset && c < p.offset + p.size);
    }
    let total: u64 = run
        .metrics
        .per_class_out_degree
        .iter()
        .map(|&d| d as u64 + 1)
        .sum();
    assert!(run.metrics.colors_used <= total);
}

#[test]
fn adversarial_orders_stay_proper() {
    let n = 2000;
    for order in Order::ALL {
        let spec = GenSpec::forest_union(n, 6, 3).with_order(*order);
        let g = generate(&spec).unwrap();
        let stored = StoredGraph::from_edges(n, &g.edges);
        let mut stream = EdgeStream::from_edges(n, g.edges).unwrap();
        let run = run_algorithm3(&mut stream, 6, 0.5, 1.0, 1).unwrap();
        assert!(verify_proper(&stored, &run.coloring).unwrap().is_empty());
        assert_eq!(run.metrics.passes, run.metrics.k as u64);
    }
}
