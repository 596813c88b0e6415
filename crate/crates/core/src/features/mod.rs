//! Graph-level features: size, distance, centrality, clustering and
//! adjacency/Laplacian spectrum statistics.

pub mod eigen;
pub mod paths;

use thiserror::Error;

pub use eigen::{symmetric_eigenvalues, EigenError, Spectrum};
pub use paths::{all_pairs_distances, betweenness_centralities, closeness_centralities, DistanceTable};

use crate::graph::{adjacency_matrix, laplacian_matrix, largest_connected_component, Graph};
use crate::scalar::Scalar;
use crate::stats::median;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FeatureError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

/// Default relative threshold below which an eigenvalue counts as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-8;

macro_rules! feature_vector {
    ($($field:ident),* $(,)?) => {
        /// The 23 graph-level features, in canonical column order.
        #[derive(Debug, Clone, PartialEq, Default)]
        pub struct FeatureVector<T> {
            $(pub $field: T,)*
            /// Distance and spectral features were taken on the largest
            /// connected component because the graph is disconnected.
            pub used_largest_component: bool,
        }

        /// Column names in canonical order.
        pub const FEATURE_NAMES: [&str; 23] = [$(stringify!($field)),*];

        impl<T: Copy> FeatureVector<T> {
            pub fn values(&self) -> [T; 23] {
                [$(self.$field),*]
            }

            pub fn from_values(values: [T; 23], used_largest_component: bool) -> Self {
                let [$($field),*] = values;
                FeatureVector { $($field,)* used_largest_component }
            }
        }
    };
}

feature_vector!(
    num_nodes,
    num_edges,
    density,
    radius,
    diameter,
    median_degree_centrality,
    median_betweenness_centrality,
    median_closeness_centrality,
    global_clustering_coefficient,
    median_eccentricity,
    algebraic_connectivity,
    median_neighbor_median_degree,
    spectral_radius,
    laplacian_spectral_radius,
    median_geodesic_distance,
    smallest_nonzero_laplacian_eig,
    second_smallest_nonzero_laplacian_eig,
    second_largest_laplacian_eig,
    smallest_nonzero_adjacency_eig,
    second_smallest_adjacency_eig,
    second_largest_adjacency_eig,
    adjacency_spectral_gap,
    laplacian_spectral_spread,
);

pub const FEATURE_COUNT: usize = FEATURE_NAMES.len();

/// Index of a feature column by name.
pub fn feature_index(name: &str) -> Option<usize> {
    FEATURE_NAMES.iter().position(|&f| f == name)
}

/// `3·triangles / connected triples`; 0 when the graph has no triple.
pub fn global_clustering_coefficient<T: Scalar>(g: &Graph) -> T {
    let mut triangles = 0u64;
    for (u, v) in g.edges() {
        // Count each triangle once via its lowest edge (u < v < w).
        let (a, b) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if a[i] > v {
                        triangles += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    let triples: u64 = g
        .degrees()
        .iter()
        .map(|&d| (d as u64) * (d as u64).saturating_sub(1) / 2)
        .sum();
    if triples == 0 {
        T::zero()
    } else {
        T::of(3.0 * triangles as f64) / T::of(triples as f64)
    }
}

/// Median over vertices of the median raw degree of each vertex's neighbors;
/// isolated vertices contribute 0.
pub fn median_neighbor_median_degree<T: Scalar>(g: &Graph) -> T {
    let per_vertex: Vec<T> = (0..g.vertex_count())
        .map(|v| {
            let degs: Vec<T> = g.neighbors(v).iter().map(|&w| T::count(g.degree(w))).collect();
            median(&degs).unwrap_or_else(T::zero)
        })
        .collect();
    median(&per_vertex).unwrap_or_else(T::zero)
}

/// Computes every feature of `g`. Size, density, degree, clustering and
/// neighbor-degree features use the whole graph; distance and spectral
/// features use the largest connected component when `g` is disconnected.
/// Spectral entries that do not exist for tiny graphs (e.g. a second-largest
/// eigenvalue of a 1×1 matrix) are reported as 0.
pub fn extract_features<T: Scalar>(g: &Graph, tol: T) -> Result<FeatureVector<T>, FeatureError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(FeatureError::EmptyGraph);
    }
    let m = g.edge_count();
    let zero = T::zero();

    let density = if n >= 2 {
        T::of(2.0 * m as f64) / (T::count(n) * T::count(n - 1))
    } else {
        zero
    };
    let degree_centralities: Vec<T> = if n == 1 {
        vec![T::one()]
    } else {
        g.degrees()
            .into_iter()
            .map(|d| T::count(d) / T::count(n - 1))
            .collect()
    };

    let (core, _) = largest_connected_component(g).map_err(|_| FeatureError::EmptyGraph)?;
    let used_largest_component = core.vertex_count() != n;

    let table = all_pairs_distances(&core)?;
    let ecc: Vec<T> = table.eccentricities().into_iter().map(|e| T::of(e as f64)).collect();
    let radius = ecc.iter().copied().fold(T::infinity(), T::min);
    let diameter = ecc.iter().copied().fold(zero, T::max);
    let pair_distances: Vec<T> = table
        .pair_distances()
        .into_iter()
        .map(|d| T::of(d as f64))
        .collect();
    let betweenness: Vec<T> = betweenness_centralities(&core)?;
    let closeness: Vec<T> = closeness_centralities(&table);

    let adjacency = symmetric_eigenvalues(&adjacency_matrix::<T>(&core).expect("non-empty"), tol)?;
    let laplacian = symmetric_eigenvalues(&laplacian_matrix::<T>(&core).expect("non-empty"), tol)?;
    let lap_nonzero: Vec<T> = laplacian.nonzero().collect();
    let adj_nonzero: Vec<T> = adjacency.nonzero().collect();

    let spectral_radius = adjacency.largest().unwrap_or(zero);
    let second_largest_adjacency_eig = adjacency.descending(1).unwrap_or(zero);
    let laplacian_spectral_radius = laplacian.largest().unwrap_or(zero);

    Ok(FeatureVector {
        num_nodes: T::count(n),
        num_edges: T::count(m),
        density,
        radius,
        diameter,
        median_degree_centrality: median(&degree_centralities).unwrap_or(zero),
        median_betweenness_centrality: median(&betweenness).unwrap_or(zero),
        median_closeness_centrality: median(&closeness).unwrap_or(zero),
        global_clustering_coefficient: global_clustering_coefficient(g),
        median_eccentricity: median(&ecc).unwrap_or(zero),
        algebraic_connectivity: laplacian.ascending(1).unwrap_or(zero),
        median_neighbor_median_degree: median_neighbor_median_degree(g),
        spectral_radius,
        laplacian_spectral_radius,
        median_geodesic_distance: median(&pair_distances).unwrap_or(zero),
        smallest_nonzero_laplacian_eig: lap_nonzero.first().copied().unwrap_or(zero),
        second_smallest_nonzero_laplacian_eig: lap_nonzero.get(1).copied().unwrap_or(zero),
        second_largest_laplacian_eig: laplacian.descending(1).unwrap_or(zero),
        smallest_nonzero_adjacency_eig: adj_nonzero.first().copied().unwrap_or(zero),
        second_smallest_adjacency_eig: adjacency.ascending(1).unwrap_or(zero),
        second_largest_adjacency_eig,
        adjacency_spectral_gap: if core.vertex_count() >= 2 {
            spectral_radius - second_largest_adjacency_eig
        } else {
            zero
        },
        laplacian_spectral_spread: laplacian_spectral_radius - laplacian.smallest().unwrap_or(zero),
        used_largest_component,
    })
}
