//! Fallible alternates: a deterministic greedy construction and a
//! multi-restart local search with add and (1,2)-swap moves.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::bitset::VertexSet;
use super::{CliqueResult, SolverError, GREEDY_SOLVER, LOCAL_SEARCH_SOLVER};
use crate::graph::Graph;

fn neighbor_sets(g: &Graph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    (0..n)
        .map(|v| {
            let mut s = VertexSet::new(n);
            for &w in g.neighbors(v) {
                s.insert(w);
            }
            s
        })
        .collect()
}

/// Repeatedly adds the candidate with the most neighbors inside the current
/// candidate set (ties to the smallest id).
fn greedy_construct(adj: &[VertexSet], effort: &mut u64) -> Vec<usize> {
    let n = adj.len();
    let mut candidates = VertexSet::full(n);
    let mut clique = Vec::new();
    while !candidates.is_empty() {
        let mut pick = usize::MAX;
        let mut pick_degree = 0;
        for v in candidates.iter() {
            *effort += 1;
            let d = adj[v].intersection_len(&candidates);
            if pick == usize::MAX || d > pick_degree {
                pick = v;
                pick_degree = d;
            }
        }
        clique.push(pick);
        candidates = candidates.intersection(&adj[pick]);
    }
    clique
}

pub fn solve_greedy(g: &Graph) -> Result<CliqueResult, SolverError> {
    if g.is_empty() {
        return Err(SolverError::EmptyGraph);
    }
    let start = Instant::now();
    let mut effort = 0;
    let clique = greedy_construct(&neighbor_sets(g), &mut effort);
    Ok(CliqueResult::new(
        GREEDY_SOLVER,
        clique,
        false,
        false,
        start.elapsed().as_secs_f64(),
        effort,
    ))
}

fn random_construct(adj: &[VertexSet], rng: &mut ChaCha8Rng, effort: &mut u64) -> Vec<usize> {
    let n = adj.len();
    let all: Vec<usize> = (0..n).collect();
    let first = *all.choose(rng).expect("non-empty graph");
    let mut clique = vec![first];
    let mut candidates = adj[first].clone();
    while !candidates.is_empty() {
        let pool: Vec<usize> = candidates.iter().collect();
        *effort += pool.len() as u64;
        let v = *pool.choose(rng).expect("non-empty pool");
        clique.push(v);
        candidates = candidates.intersection(&adj[v]);
    }
    clique
}

/// Applies add moves and (1,2)-swaps until neither applies. Each move grows
/// the clique by one, so this terminates.
fn improve(adj: &[VertexSet], clique: &mut Vec<usize>, effort: &mut u64) {
    let n = adj.len();
    loop {
        let mut members = VertexSet::new(n);
        for &v in clique.iter() {
            members.insert(v);
        }
        // missing[x] = clique members not adjacent to x; witness = one of them.
        let mut missing = vec![0usize; n];
        let mut witness = vec![usize::MAX; n];
        for x in 0..n {
            if members.contains(x) {
                continue;
            }
            for &c in clique.iter() {
                *effort += 1;
                if !adj[x].contains(c) {
                    missing[x] += 1;
                    witness[x] = c;
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| !members.contains(x) && missing[x] == 0) {
            clique.push(x);
            continue;
        }
        let mut swapped = false;
        'outer: for &out in clique.iter() {
            let pool: Vec<usize> = (0..n)
                .filter(|&x| !members.contains(x) && missing[x] == 1 && witness[x] == out)
                .collect();
            for (i, &a) in pool.iter().enumerate() {
                for &b in &pool[i + 1..] {
                    *effort += 1;
                    if adj[a].contains(b) {
                        clique.retain(|&v| v != out);
                        clique.push(a);
                        clique.push(b);
                        swapped = true;
                        break 'outer;
                    }
                }
            }
        }
        if !swapped {
            return;
        }
    }
}

/// Restart 0 improves the greedy construction; later restarts improve a
/// random construction from a random start vertex. Deterministic given `seed`.
pub fn solve_local_search(g: &Graph, iterations: usize, seed: u64) -> Result<CliqueResult, SolverError> {
    if g.is_empty() {
        return Err(SolverError::EmptyGraph);
    }
    let start = Instant::now();
    let adj = neighbor_sets(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut effort = 0;
    let mut best: Vec<usize> = Vec::new();
    for restart in 0..iterations.max(1) {
        let mut clique = if restart == 0 {
            greedy_construct(&adj, &mut effort)
        } else {
            random_construct(&adj, &mut rng, &mut effort)
        };
        improve(&adj, &mut clique, &mut effort);
        if clique.len() > best.len() {
            best = clique;
        }
    }
    Ok(CliqueResult::new(
        LOCAL_SEARCH_SOLVER,
        best,
        false,
        false,
        start.elapsed().as_secs_f64(),
        effort,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{brute_force_omega, is_clique};
    use graphhard_testkit::generate;

    /// Two disjoint triangles, plus a hub joined to one vertex of each and to
    /// two pendant leaves.
    fn hub_decoy() -> Graph {
        Graph::from_edges(
            9,
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 0), (6, 3), (6, 7), (6, 8)],
        )
        .unwrap()
    }

    #[test]
    fn greedy_on_complete_and_star() {
        let r = solve_greedy(&Graph::complete(6)).unwrap();
        assert_eq!(r.vertices, (0..6).collect::<Vec<_>>());
        assert!(!r.proven_optimal);
        assert_eq!(solve_greedy(&Graph::star(4)).unwrap().size, 2);
    }

    #[test]
    fn greedy_is_fooled_by_hub() {
        let g = hub_decoy();
        let r = solve_greedy(&g).unwrap();
        assert!(r.vertices.contains(&6));
        assert_eq!(r.size, 2);
        assert_eq!(brute_force_omega(&g).unwrap(), 3);
    }

    #[test]
    fn local_search_examples() {
        assert_eq!(solve_local_search(&Graph::complete(4), 1, 0).unwrap().size, 4);
        for seed in 0..5 {
            assert_eq!(solve_local_search(&Graph::cycle(5), 10, seed).unwrap().size, 2);
        }
    }

    #[test]
    fn local_search_dominates_greedy() {
        for seed in 0..20 {
            let g = Graph::from_edges(20, generate::gnp(20, 0.6, seed)).unwrap();
            let greedy = solve_greedy(&g).unwrap();
            let local = solve_local_search(&g, 50, seed).unwrap();
            assert!(is_clique(&g, &local.vertices));
            assert!(local.size >= greedy.size);
            assert!(local.size <= brute_force_omega(&g).unwrap());
        }
    }

    #[test]
    fn local_search_is_seed_deterministic() {
        let g = Graph::from_edges(40, generate::gnp(40, 0.5, 3)).unwrap();
        let a = solve_local_search(&g, 20, 11).unwrap();
        let b = solve_local_search(&g, 20, 11).unwrap();
        assert_eq!((a.vertices, a.effort), (b.vertices, b.effort));
    }

    #[test]
    fn swap_escapes_hub() {
        // Removing the hub and adding the rest of its triangle is a (1,2)-swap.
        let r = solve_local_search(&hub_decoy(), 1, 0).unwrap();
        assert_eq!(r.size, 3);
    }
}
