//! Seeded synthetic inputs: random graphs, random symmetric matrices, and
//! feature tables with planted ground truth.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::percentile;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi G(n, p) edge list with `u < v`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

pub fn petersen() -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    edges
}

/// Symmetric matrix with entries uniform in `[-1, 1)`.
pub fn symmetric_matrix(order: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    let mut a = vec![vec![0.0; order]; order];
    for i in 0..order {
        for j in i..order {
            let v = r.gen_range(-1.0..1.0);
            a[i][j] = v;
            a[j][i] = v;
        }
    }
    a
}

/// Uniform random permutation of `0..n`.
pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng(seed));
    p
}

fn normal(r: &mut ChaCha8Rng) -> f64 {
    // Box–Muller.
    let u1: f64 = r.gen_range(f64::EPSILON..1.0);
    let u2: f64 = r.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Feature table whose hardness label is a planted three-feature quartile rule.
#[derive(Debug, Clone)]
pub struct PlantedCorpus {
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<bool>,
    /// Column indices of the rule: `high` must lie above its P75, each of
    /// `low` at or below its P25.
    pub high: usize,
    pub low: [usize; 2],
    /// Number of hard/not-hard label pairs swapped as noise.
    pub swapped: usize,
}

/// `n` rows of `width` features. A latent factor drives the three planted
/// columns (one upward, two downward) so that the conjunction
/// `x[high] > P75 ∧ x[low0] ≤ P25 ∧ x[low1] ≤ P25` holds for roughly 3% of
/// rows. Label noise swaps `ceil(noise · hard)` hard labels with as many
/// not-hard labels, keeping the class ratio. Other columns are independent.
pub fn planted_corpus(
    n: usize,
    width: usize,
    high: usize,
    low: [usize; 2],
    noise: f64,
    seed: u64,
) -> PlantedCorpus {
    let mut r = rng(seed);
    let spread = 0.6;
    let mut rows = vec![vec![0.0; width]; n];
    for row in rows.iter_mut() {
        let latent: f64 = r.gen();
        for (j, x) in row.iter_mut().enumerate() {
            *x = if j == high {
                40.0 + 200.0 * (latent + spread * normal(&mut r))
            } else if low.contains(&j) {
                -1.0 - 3.0 * (latent + spread * normal(&mut r))
            } else {
                (j as f64 + 1.0) * r.gen::<f64>() + 0.1 * j as f64
            };
        }
    }
    let col = |j: usize| rows.iter().map(|row| row[j]).collect::<Vec<_>>();
    let high_cut = percentile(&col(high), 0.75);
    let low_cut = [percentile(&col(low[0]), 0.25), percentile(&col(low[1]), 0.25)];
    let mut labels: Vec<bool> = rows
        .iter()
        .map(|row| row[high] > high_cut && row[low[0]] <= low_cut[0] && row[low[1]] <= low_cut[1])
        .collect();

    let mut hard: Vec<usize> = (0..n).filter(|&i| labels[i]).collect();
    let mut easy: Vec<usize> = (0..n).filter(|&i| !labels[i]).collect();
    let swapped = (noise * hard.len() as f64).ceil() as usize;
    hard.shuffle(&mut r);
    easy.shuffle(&mut r);
    for k in 0..swapped.min(hard.len()).min(easy.len()) {
        labels[hard[k]] = false;
        labels[easy[k]] = true;
    }
    PlantedCorpus {
        rows,
        labels,
        high,
        low,
        swapped,
    }
}

/// Feature rows plus a positive runtime target that is a smooth function of
/// three columns with multiplicative Gaussian noise of relative size `noise`.
pub fn runtime_corpus(
    n: usize,
    width: usize,
    drivers: [usize; 3],
    noise: f64,
    seed: u64,
) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut r = rng(seed);
    let mut rows = Vec::with_capacity(n);
    let mut target = Vec::with_capacity(n);
    for _ in 0..n {
        let row: Vec<f64> = (0..width).map(|j| (j as f64 + 1.0) * r.gen::<f64>()).collect();
        let x: Vec<f64> = drivers
            .iter()
            .map(|&j| row[j] / (j as f64 + 1.0))
            .collect();
        let clean = 1.0 + 2.0 * x[0] + 3.0 * x[1] * x[1] + (3.0 * x[2]).sin();
        target.push(clean * (1.0 + noise * normal(&mut r)));
        rows.push(row);
    }
    (rows, target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_rate_is_near_three_percent() {
        let c = planted_corpus(2400, 23, 0, [18, 19], 0.02, 7);
        let rate = c.labels.iter().filter(|&&h| h).count() as f64 / 2400.0;
        assert!((0.02..0.045).contains(&rate), "rate {rate}");
    }

    #[test]
    fn petersen_is_cubic() {
        let mut deg = [0; 10];
        for (u, v) in petersen() {
            deg[u] += 1;
            deg[v] += 1;
        }
        assert!(deg.iter().all(|&d| d == 3));
    }
}
