//! Exact maximum clique by branch and bound with greedy-coloring bounds.

use std::time::{Duration, Instant};

use super::bitset::VertexSet;
use super::{CliqueResult, SolverError, EXACT_SOLVER};
use crate::graph::Graph;

pub const BRUTE_FORCE_LIMIT: usize = 22;

/// ω(G) by enumerating every clique once (each extended only by larger ids).
pub fn brute_force_omega(g: &Graph) -> Result<usize, SolverError> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(SolverError::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    fn extend(g: &Graph, size: usize, candidates: &[usize], best: &mut usize) {
        *best = (*best).max(size);
        for (i, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v, w))
                .collect();
            extend(g, size + 1, &next, best);
        }
    }
    let mut best = 0;
    extend(g, 0, &(0..n).collect::<Vec<_>>(), &mut best);
    Ok(best)
}

struct Search {
    /// Adjacency in search order (vertex `i` is `order[i]` in the graph).
    adj: Vec<VertexSet>,
    best: Vec<usize>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl Search {
    /// Greedy sequential coloring of `candidates`; returns vertices grouped by
    /// color class with the color number of each, colors non-decreasing.
    fn color_classes(&self, candidates: &VertexSet) -> Vec<(usize, usize)> {
        let mut uncolored = candidates.clone();
        let mut out = Vec::with_capacity(candidates.len());
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut open = uncolored.clone();
            while let Some(v) = open.first() {
                uncolored.remove(v);
                open.remove(v);
                open.difference_with(&self.adj[v]);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut candidates: VertexSet) {
        self.nodes += 1;
        if self.nodes % 256 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.timed_out = true;
                }
            }
        }
        if self.timed_out {
            return;
        }
        let colored = self.color_classes(&candidates);
        for &(v, color) in colored.iter().rev() {
            if clique.len() + color <= self.best.len() {
                return;
            }
            clique.push(v);
            let next = candidates.intersection(&self.adj[v]);
            if next.is_empty() {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            candidates.remove(v);
            if self.timed_out {
                return;
            }
        }
    }
}

/// Maximum clique. Completes with `proven_optimal = true`, or stops at
/// `time_limit` with the best incumbent and `timed_out = true`.
///
/// Any returned set satisfies `x_i + x_j ≤ 1` for every non-adjacent pair:
/// candidates are always filtered through the adjacency of each added vertex.
pub fn solve_exact_bnb(g: &Graph, time_limit: Option<Duration>) -> Result<CliqueResult, SolverError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(SolverError::EmptyGraph);
    }
    let start = Instant::now();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let adj = order
        .iter()
        .map(|&v| {
            let mut s = VertexSet::new(n);
            for &w in g.neighbors(v) {
                s.insert(position[w]);
            }
            s
        })
        .collect();
    let mut search = Search {
        adj,
        best: Vec::new(),
        nodes: 0,
        deadline: time_limit.map(|t| start + t),
        timed_out: false,
    };
    search.expand(&mut Vec::new(), VertexSet::full(n));
    let vertices = search.best.iter().map(|&i| order[i]).collect();
    Ok(CliqueResult::new(
        EXACT_SOLVER,
        vertices,
        !search.timed_out,
        search.timed_out,
        start.elapsed().as_secs_f64(),
        search.nodes,
    ))
}
