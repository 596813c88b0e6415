//! Breadth-first distances and shortest-path centralities on unweighted graphs.

use std::collections::VecDeque;

use crate::graph::Graph;
use crate::scalar::Scalar;

use super::FeatureError;

/// Hop distances between every pair of vertices of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceTable {
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// Maximum distance from each vertex.
    pub fn eccentricities(&self) -> Vec<u32> {
        (0..self.n)
            .map(|u| self.row(u).iter().copied().max().unwrap_or(0))
            .collect()
    }

    /// Distances `d(u, v)` for `u < v`.
    pub fn pair_distances(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for u in 0..self.n {
            out.extend_from_slice(&self.row(u)[u + 1..]);
        }
        out
    }
}

fn bfs(g: &Graph, source: usize, dist: &mut [u32]) -> usize {
    dist.fill(u32::MAX);
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    reached
}

/// One BFS per source.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceTable, FeatureError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(FeatureError::EmptyGraph);
    }
    let mut dist = vec![0u32; n * n];
    for s in 0..n {
        if bfs(g, s, &mut dist[s * n..(s + 1) * n]) != n {
            return Err(FeatureError::Disconnected);
        }
    }
    Ok(DistanceTable { n, dist })
}

/// Normalized betweenness via dependency accumulation over BFS DAGs,
/// scaled by `2/((n−1)(n−2))`. Graphs with fewer than three vertices get zeros.
pub fn betweenness_centralities<T: Scalar>(g: &Graph) -> Result<Vec<T>, FeatureError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(FeatureError::EmptyGraph);
    }
    let mut bc = vec![T::zero(); n];
    if n < 3 {
        return Ok(bc);
    }
    let mut sigma = vec![T::zero(); n];
    let mut dist = vec![i64::MAX; n];
    let mut delta = vec![T::zero(); n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for s in 0..n {
        sigma.fill(T::zero());
        dist.fill(i64::MAX);
        delta.fill(T::zero());
        preds.iter_mut().for_each(Vec::clear);
        order.clear();
        sigma[s] = T::one();
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in g.neighbors(u) {
                if dist[v] == i64::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
                if dist[v] == dist[u] + 1 {
                    let su = sigma[u];
                    sigma[v] += su;
                    preds[v].push(u);
                }
            }
        }
        if order.len() != n {
            return Err(FeatureError::Disconnected);
        }
        for &w in order.iter().rev() {
            for &u in &preds[w] {
                let share = sigma[u] / sigma[w] * (T::one() + delta[w]);
                delta[u] += share;
            }
            if w != s {
                bc[w] += delta[w];
            }
        }
    }
    // Each unordered pair was counted from both endpoints.
    let scale = T::one() / (T::count(n - 1) * T::count(n - 2));
    for b in &mut bc {
        *b *= scale;
    }
    Ok(bc)
}

/// Closeness `(n−1)/Σ_u d(v, u)` for every vertex; a single vertex gets 0.
pub fn closeness_centralities<T: Scalar>(table: &DistanceTable) -> Vec<T> {
    let n = table.order();
    (0..n)
        .map(|v| {
            let total: u64 = table.row(v).iter().map(|&d| d as u64).sum();
            if total == 0 {
                T::zero()
            } else {
                T::count(n - 1) / T::of(total as f64)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphhard_testkit::{generate, oracle};

    #[test]
    fn path_distances() {
        let t = all_pairs_distances(&Graph::path(3)).unwrap();
        assert_eq!(t.get(0, 2), 2);
        assert_eq!(t.get(2, 0), 2);
        assert_eq!((t.get(0, 1), t.get(1, 2), t.get(1, 1)), (1, 1, 0));
    }

    #[test]
    fn complete_and_cycle_distances() {
        let t = all_pairs_distances(&Graph::complete(4)).unwrap();
        assert!(t.pair_distances().iter().all(|&d| d == 1));
        let c = all_pairs_distances(&Graph::cycle(6)).unwrap();
        assert_eq!(c.pair_distances().iter().max(), Some(&3));
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(all_pairs_distances(&g), Err(FeatureError::Disconnected));
        assert_eq!(
            betweenness_centralities::<f64>(&g),
            Err(FeatureError::Disconnected)
        );
    }

    #[test]
    fn betweenness_examples() {
        let p3: Vec<f64> = betweenness_centralities(&Graph::path(3)).unwrap();
        assert_eq!(p3, vec![0.0, 1.0, 0.0]);
        let k4: Vec<f64> = betweenness_centralities(&Graph::complete(4)).unwrap();
        assert!(k4.iter().all(|&b| b == 0.0));
        let star: Vec<f64> = betweenness_centralities(&Graph::star(4)).unwrap();
        assert!((star[0] - 1.0).abs() < 1e-15);
        assert!(star[1..].iter().all(|&b| b == 0.0));
        let tiny: Vec<f64> = betweenness_centralities(&Graph::path(2)).unwrap();
        assert_eq!(tiny, vec![0.0, 0.0]);
    }

    #[test]
    fn betweenness_matches_path_enumeration() {
        for seed in 0..30 {
            let edges = generate::gnp(9, 0.4, seed);
            let g = Graph::from_edges(9, edges.clone()).unwrap();
            if !g.is_connected() {
                continue;
            }
            let fast: Vec<f64> = betweenness_centralities(&g).unwrap();
            let slow = oracle::betweenness_by_enumeration(9, &edges);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).abs() < 1e-12, "seed {seed}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn closeness_of_star() {
        let t = all_pairs_distances(&Graph::star(3)).unwrap();
        let c: Vec<f64> = closeness_centralities(&t);
        assert_eq!(c[0], 1.0);
        assert_eq!(c[1], 3.0 / 5.0);
    }
}
