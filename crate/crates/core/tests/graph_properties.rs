use graphhard_core::features::{all_pairs_distances, extract_features, symmetric_eigenvalues, FEATURE_NAMES};
use graphhard_core::graph::{
    adjacency_matrix, laplacian_matrix, largest_connected_component, parse_dimacs, parse_edge_list, write_dimacs,
    write_edge_list, Graph,
};
use graphhard_testkit::generate::{gnp, permutation};
use graphhard_testkit::oracle::component_count;

fn random_graph(seed: u64) -> (usize, Vec<(usize, usize)>) {
    let n = 2 + (seed as usize * 7) % 14;
    let p = [0.15, 0.3, 0.5, 0.8][seed as usize % 4];
    (n, gnp(n, p, seed))
}

#[test]
fn spectra_respect_trace_and_degree_bounds() {
    for seed in 0..120 {
        let (n, edges) = random_graph(seed);
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        let m = g.edge_count() as f64;
        let a = symmetric_eigenvalues(&adjacency_matrix::<f64>(&g).unwrap(), 1e-8).unwrap();
        let l = symmetric_eigenvalues(&laplacian_matrix::<f64>(&g).unwrap(), 1e-8).unwrap();
        let tol = 1e-9 * (1.0 + m);
        assert!(a.eigenvalues().iter().sum::<f64>().abs() < tol, "seed {seed}");
        assert!((l.eigenvalues().iter().sum::<f64>() - 2.0 * m).abs() < tol, "seed {seed}");
        let rho = a.largest().unwrap();
        let max_deg = *g.degrees().iter().max().unwrap() as f64;
        assert!(rho >= 2.0 * m / n as f64 - 1e-9 && rho <= max_deg + 1e-9, "seed {seed}");
        assert_eq!(l.zero_count(), component_count(n, &edges), "seed {seed}");
    }
}

#[test]
fn radius_diameter_and_density() {
    for seed in 0..120 {
        let (n, edges) = random_graph(seed);
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        let f = extract_features::<f64>(&g, 1e-8).unwrap();
        assert!(f.radius <= f.diameter && f.diameter <= 2.0 * f.radius, "seed {seed}");
        let want = 2.0 * g.edge_count() as f64 / (n * (n - 1)) as f64;
        assert!((f.density - want).abs() < 1e-15);
        let (core, _) = largest_connected_component(&g).unwrap();
        let ecc = all_pairs_distances(&core).unwrap().eccentricities();
        assert_eq!(f.diameter, *ecc.iter().max().unwrap() as f64);
        assert_eq!(f.used_largest_component, !g.is_connected());
    }
}

#[test]
fn features_are_isomorphism_invariant() {
    for seed in 0..50 {
        let (n, edges) = random_graph(seed + 1000);
        let g = Graph::from_edges(n, edges).unwrap();
        let h = g.relabel(&permutation(n, seed));
        let a = extract_features::<f64>(&g, 1e-8).unwrap().values();
        let b = extract_features::<f64>(&h, 1e-8).unwrap().values();
        for k in 0..a.len() {
            assert!((a[k] - b[k]).abs() <= 1e-8, "seed {seed}: {}", FEATURE_NAMES[k]);
        }
    }
}

#[test]
fn written_corpora_parse_back_to_valid_graphs() {
    for seed in 0..60 {
        let (n, edges) = random_graph(seed);
        let g = Graph::from_edges(n, edges).unwrap();
        let d = parse_dimacs(&write_dimacs(&g)).unwrap();
        assert_eq!(d.graph, g);
        assert!(d.graph.validate().is_ok());
        let e = parse_edge_list(&write_edge_list(&g));
        if g.degrees().contains(&0) {
            // isolated vertices have no line in an edge list
            continue;
        }
        let e = e.unwrap();
        assert!(e.graph.validate().is_ok());
        assert_eq!(e.graph.edge_count(), g.edge_count());
        let mut back: Vec<(i64, i64)> = e
            .graph
            .edges()
            .map(|(u, v)| {
                let (a, b) = (e.original_ids[u], e.original_ids[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        back.sort_unstable();
        let mut want: Vec<(i64, i64)> = g.edges().map(|(u, v)| (u as i64, v as i64)).collect();
        want.sort_unstable();
        assert_eq!(back, want);
    }
}
