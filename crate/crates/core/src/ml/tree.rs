//! Depth-limited least-squares regression trees.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Node {
    Leaf(f64),
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionTree {
    nodes: Vec<Node>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct TreeParams {
    pub max_depth: usize,
    pub min_samples_leaf: usize,
}

struct Builder<'a, F> {
    x: &'a [Vec<f64>],
    target: &'a [f64],
    params: TreeParams,
    leaf_value: F,
    nodes: Vec<Node>,
}

impl RegressionTree {
    /// Grows a tree on the rows `idx` that greedily minimizes squared error
    /// against `target`; each leaf's output is `leaf_value(rows in leaf)`.
    pub(crate) fn fit<F: Fn(&[usize]) -> f64>(
        x: &[Vec<f64>],
        target: &[f64],
        idx: Vec<usize>,
        params: TreeParams,
        leaf_value: F,
    ) -> Self {
        let mut b = Builder {
            x,
            target,
            params,
            leaf_value,
            nodes: Vec::new(),
        };
        b.grow(idx, 0);
        RegressionTree { nodes: b.nodes }
    }

    pub fn predict(&self, row: &[f64]) -> f64 {
        let mut at = 0;
        loop {
            match self.nodes[at] {
                Node::Leaf(v) => return v,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => at = if row[feature] <= threshold { left } else { right },
            }
        }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn depth(&self) -> usize {
        fn go(nodes: &[Node], at: usize) -> usize {
            match nodes[at] {
                Node::Leaf(_) => 0,
                Node::Split { left, right, .. } => 1 + go(nodes, left).max(go(nodes, right)),
            }
        }
        go(&self.nodes, 0)
    }
}

impl<F: Fn(&[usize]) -> f64> Builder<'_, F> {
    fn grow(&mut self, idx: Vec<usize>, depth: usize) -> usize {
        let at = self.nodes.len();
        self.nodes.push(Node::Leaf(0.0));
        let split = if depth < self.params.max_depth {
            self.best_split(&idx)
        } else {
            None
        };
        match split {
            None => self.nodes[at] = Node::Leaf((self.leaf_value)(&idx)),
            Some((feature, threshold)) => {
                let (l, r): (Vec<usize>, Vec<usize>) =
                    idx.iter().partition(|&&i| self.x[i][feature] <= threshold);
                let left = self.grow(l, depth + 1);
                let right = self.grow(r, depth + 1);
                self.nodes[at] = Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                };
            }
        }
        at
    }

    /// Maximizes `S_l^2/n_l + S_r^2/n_r - S^2/n`; first feature and lowest
    /// threshold win ties.
    fn best_split(&self, idx: &[usize]) -> Option<(usize, f64)> {
        let n = idx.len();
        let min_leaf = self.params.min_samples_leaf.max(1);
        if n < 2 * min_leaf {
            return None;
        }
        let total: f64 = idx.iter().map(|&i| self.target[i]).sum();
        let base = total * total / n as f64;
        let width = self.x[idx[0]].len();
        let mut best: Option<(f64, usize, f64)> = None;
        let mut order = idx.to_vec();
        for f in 0..width {
            order.sort_by(|&a, &b| self.x[a][f].total_cmp(&self.x[b][f]));
            let mut left_sum = 0.0;
            for k in 0..n - 1 {
                left_sum += self.target[order[k]];
                let nl = k + 1;
                let (lo, hi) = (self.x[order[k]][f], self.x[order[k + 1]][f]);
                if nl < min_leaf || n - nl < min_leaf || lo == hi {
                    continue;
                }
                let right_sum = total - left_sum;
                let gain = left_sum * left_sum / nl as f64
                    + right_sum * right_sum / (n - nl) as f64
                    - base;
                if gain > 1e-12 * (1.0 + base.abs()) && best.is_none_or(|b| gain > b.0) {
                    best = Some((gain, f, lo + (hi - lo) / 2.0));
                }
            }
        }
        best.map(|(_, f, t)| (f, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_of(target: &[f64]) -> impl Fn(&[usize]) -> f64 + '_ {
        move |idx: &[usize]| idx.iter().map(|&i| target[i]).sum::<f64>() / idx.len() as f64
    }

    #[test]
    fn recovers_a_step() {
        let x: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64, (i * 7 % 5) as f64]).collect();
        let y: Vec<f64> = (0..20).map(|i| if i < 12 { 1.0 } else { 5.0 }).collect();
        let p = TreeParams { max_depth: 3, min_samples_leaf: 1 };
        let t = RegressionTree::fit(&x, &y, (0..20).collect(), p, mean_of(&y));
        assert_eq!(t.depth(), 1);
        assert_eq!(t.nodes()[0], Node::Split { feature: 0, threshold: 11.5, left: 1, right: 2 });
        for (row, &v) in x.iter().zip(&y) {
            assert_eq!(t.predict(row), v);
        }
    }

    #[test]
    fn respects_depth_and_leaf_size() {
        let x: Vec<Vec<f64>> = (0..64).map(|i| vec![i as f64]).collect();
        let y: Vec<f64> = (0..64).map(|i| ((i * 37) % 11) as f64).collect();
        let p = TreeParams { max_depth: 2, min_samples_leaf: 10 };
        let t = RegressionTree::fit(&x, &y, (0..64).collect(), p, mean_of(&y));
        assert!(t.depth() <= 2);
        let mut counts = std::collections::BTreeMap::new();
        for row in &x {
            *counts.entry(t.predict(row).to_bits()).or_insert(0) += 1;
        }
        assert!(counts.values().all(|&c| c >= 10));
    }

    #[test]
    fn constant_target_is_a_leaf() {
        let x: Vec<Vec<f64>> = (0..8).map(|i| vec![i as f64]).collect();
        let y = vec![2.0; 8];
        let p = TreeParams { max_depth: 4, min_samples_leaf: 1 };
        let t = RegressionTree::fit(&x, &y, (0..8).collect(), p, mean_of(&y));
        assert_eq!(t.nodes(), &[Node::Leaf(2.0)]);
    }
}
