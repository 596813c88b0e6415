//! Slow, direct computations used to check the fast implementations.

use num_complex::Complex64;

/// Characteristic polynomial coefficients `c[0..=n]` (ascending powers, monic)
/// of a square matrix by the Faddeev–LeVerrier recurrence.
pub fn characteristic_polynomial(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = vec![vec![0.0; n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += a[i][l] * m[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += coeffs[n - k + 1];
        }
        m = next;
        // c_{n−k} = −tr(A·M_k)/k
        let mut trace = 0.0;
        for i in 0..n {
            for l in 0..n {
                trace += a[i][l] * m[l][i];
            }
        }
        coeffs[n - k] = -trace / k as f64;
    }
    coeffs
}

fn eval_complex(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn eval_real(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// All roots of a monic polynomial by Durand–Kerner iteration.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let bound = 1.0 + coeffs[..n].iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound * 0.5).collect();
    for _ in 0..5000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval_complex(coeffs, roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

/// Eigenvalues of a real symmetric matrix as the (real) roots of its
/// characteristic polynomial, ascending, each polished by Newton steps.
pub fn symmetric_eigenvalues_by_charpoly(a: &[Vec<f64>]) -> Vec<f64> {
    let coeffs = characteristic_polynomial(a);
    let mut roots: Vec<f64> = polynomial_roots(&coeffs)
        .into_iter()
        .map(|z| {
            let mut x = z.re;
            for _ in 0..50 {
                let (p, dp) = eval_real(&coeffs, x);
                if dp == 0.0 || p == 0.0 {
                    break;
                }
                let next = x - p / dp;
                if (next - x).abs() < 1e-16 {
                    break;
                }
                x = next;
            }
            x
        })
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

/// Median with the midpoint convention for even counts.
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Percentile by linear interpolation at rank `q·(n−1)`.
pub fn percentile(values: &[f64], q: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let rank = q * (v.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = (lo + 1).min(v.len() - 1);
    v[lo] + (v[hi] - v[lo]) * (rank - lo as f64)
}

/// Adjacency sets from an edge list.
pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

/// Every shortest path between every ordered pair `s < t`, enumerated by
/// depth-first search over strictly distance-increasing steps.
fn all_shortest_paths(adj: &[Vec<bool>]) -> Vec<Vec<Vec<usize>>> {
    let n = adj.len();
    // Floyd–Warshall distances.
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if adj[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            let mut paths = Vec::new();
            if d[s][t] < inf {
                let mut stack = vec![vec![s]];
                while let Some(path) = stack.pop() {
                    let last = *path.last().unwrap();
                    if last == t {
                        paths.push(path);
                        continue;
                    }
                    for w in 0..n {
                        if adj[last][w] && d[s][w] == d[s][last] + 1 && d[w][t] + d[s][w] == d[s][t] {
                            let mut next = path.clone();
                            next.push(w);
                            stack.push(next);
                        }
                    }
                }
            }
            out.push(paths);
        }
    }
    out
}

/// Normalized betweenness by explicit shortest-path enumeration:
/// `Σ_{s<t} σ_st(v)/σ_st`, scaled by `2/((n−1)(n−2))`.
pub fn betweenness_by_enumeration(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let adj = adjacency(n, edges);
    let mut bc = vec![0.0; n];
    for paths in all_shortest_paths(&adj) {
        if paths.is_empty() {
            continue;
        }
        let total = paths.len() as f64;
        for path in &paths {
            for &v in &path[1..path.len() - 1] {
                bc[v] += 1.0 / total;
            }
        }
    }
    if n >= 3 {
        let scale = 2.0 / ((n - 1) as f64 * (n - 2) as f64);
        for b in &mut bc {
            *b *= scale;
        }
    } else {
        bc.iter_mut().for_each(|b| *b = 0.0);
    }
    bc
}

/// Number of connected components by union-find.
pub fn component_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let nx = p[c];
            p[c] = r;
            c = nx;
        }
        r
    }
    let mut count = n;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Clique number by testing every vertex subset (`n ≤ 22`): a subset is a
/// clique iff dropping its lowest vertex leaves a clique contained in that
/// vertex's neighborhood.
pub fn clique_number_by_subsets(n: usize, edges: &[(usize, usize)]) -> usize {
    assert!(n <= 22, "subset oracle limited to 22 vertices");
    let mut nbr = vec![0u32; n];
    for &(u, v) in edges {
        nbr[u] |= 1 << v;
        nbr[v] |= 1 << u;
    }
    let total = 1usize << n;
    let mut is_clique = vec![false; total];
    is_clique[0] = true;
    let mut best = 0;
    for mask in 1..total {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        if is_clique[rest] && (rest as u32) & !nbr[low] == 0 {
            is_clique[mask] = true;
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// Every itemset (as a sorted index list) with its transaction count, for
/// transactions over items `0..k`, `k ≤ 16`.
pub fn itemset_counts(transactions: &[Vec<usize>], k: usize) -> Vec<(Vec<usize>, usize)> {
    assert!(k <= 16);
    let masks: Vec<u32> = transactions
        .iter()
        .map(|t| t.iter().fold(0u32, |m, &i| m | (1 << i)))
        .collect();
    (1u32..(1 << k))
        .map(|set| {
            let count = masks.iter().filter(|&&m| m & set == set).count();
            let items = (0..k).filter(|&i| set & (1 << i) != 0).collect();
            (items, count)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_diagonal() {
        let a = vec![vec![1.0, 0.0], vec![0.0, 3.0]];
        assert_eq!(characteristic_polynomial(&a), vec![3.0, -4.0, 1.0]);
        let ev = symmetric_eigenvalues_by_charpoly(&a);
        assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn star_betweenness() {
        let edges: Vec<_> = (1..5).map(|v| (0, v)).collect();
        let bc = betweenness_by_enumeration(5, &edges);
        assert!((bc[0] - 1.0).abs() < 1e-12);
        assert!(bc[1..].iter().all(|&b| b == 0.0));
    }

    #[test]
    fn subset_clique_number() {
        let c5: Vec<_> = (0..5).map(|v| (v, (v + 1) % 5)).collect();
        assert_eq!(clique_number_by_subsets(5, &c5), 2);
    }
}
