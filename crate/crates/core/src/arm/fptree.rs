//! FP-tree construction and FP-growth mining.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use super::{ArmError, FrequentItemset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpNode {
    /// Rank of the item in the tree's order; `None` for the root.
    pub item: Option<usize>,
    pub count: usize,
    pub parent: Option<usize>,
    /// Child rank → node index.
    pub children: BTreeMap<usize, usize>,
}

/// Prefix tree over rank-encoded transactions. Node 0 is the root.
#[derive(Debug, Clone)]
struct RankTree {
    nodes: Vec<FpNode>,
    /// Per rank, the nodes holding it in insertion order.
    header: Vec<Vec<usize>>,
}

impl RankTree {
    fn new(ranks: usize) -> Self {
        RankTree {
            nodes: vec![FpNode {
                item: None,
                count: 0,
                parent: None,
                children: BTreeMap::new(),
            }],
            header: vec![Vec::new(); ranks],
        }
    }

    /// `path` must be sorted by rank.
    fn insert(&mut self, path: &[usize], count: usize) {
        let mut at = 0;
        self.nodes[0].count += count;
        for &r in path {
            at = match self.nodes[at].children.get(&r) {
                Some(&child) => child,
                None => {
                    let child = self.nodes.len();
                    self.nodes.push(FpNode {
                        item: Some(r),
                        count: 0,
                        parent: Some(at),
                        children: BTreeMap::new(),
                    });
                    self.nodes[at].children.insert(r, child);
                    self.header[r].push(child);
                    child
                }
            };
            self.nodes[at].count += count;
        }
    }

    fn rank_count(&self, r: usize) -> usize {
        self.header[r].iter().map(|&n| self.nodes[n].count).sum()
    }

    /// Prefix paths (root side first) above every node of rank `r`.
    fn pattern_base(&self, r: usize) -> Vec<(Vec<usize>, usize)> {
        self.header[r]
            .iter()
            .map(|&n| {
                let mut path = Vec::new();
                let mut at = self.nodes[n].parent;
                while let Some(p) = at {
                    if let Some(item) = self.nodes[p].item {
                        path.push(item);
                    }
                    at = self.nodes[p].parent;
                }
                path.reverse();
                (path, self.nodes[n].count)
            })
            .collect()
    }
}

/// FP-tree with its item order: rank 0 is the most frequent item, ties
/// broken by the item's own ordering.
#[derive(Debug, Clone)]
pub struct FpTree<I> {
    items: Vec<I>,
    counts: Vec<usize>,
    tree: RankTree,
    transactions: usize,
    min_count: usize,
}

/// Smallest count whose support reaches `min_support` over `n` transactions.
pub(crate) fn min_count(min_support: f64, n: usize) -> usize {
    ((min_support * n as f64 - 1e-9).ceil() as usize).max(1)
}

pub(crate) fn check_support(min_support: f64) -> Result<(), ArmError> {
    if min_support > 0.0 && min_support <= 1.0 {
        Ok(())
    } else {
        Err(ArmError::InvalidSupport(min_support))
    }
}

/// Counts item frequencies, drops items below `min_support`, and inserts
/// each transaction with its surviving items in rank order.
pub fn build_fptree<I: Ord + Clone + Hash>(transactions: &[Vec<I>], min_support: f64) -> Result<FpTree<I>, ArmError> {
    check_support(min_support)?;
    if transactions.is_empty() {
        return Err(ArmError::Empty);
    }
    let n = transactions.len();
    let threshold = min_count(min_support, n);
    let mut freq: HashMap<&I, usize> = HashMap::new();
    for t in transactions {
        let mut seen: Vec<&I> = t.iter().collect();
        seen.sort();
        seen.dedup();
        for item in seen {
            *freq.entry(item).or_default() += 1;
        }
    }
    let mut kept: Vec<(&I, usize)> = freq.into_iter().filter(|&(_, c)| c >= threshold).collect();
    kept.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let rank: HashMap<&I, usize> = kept.iter().enumerate().map(|(r, (i, _))| (*i, r)).collect();
    let mut tree = RankTree::new(kept.len());
    for t in transactions {
        let mut path: Vec<usize> = t.iter().filter_map(|i| rank.get(i).copied()).collect();
        path.sort_unstable();
        path.dedup();
        tree.insert(&path, 1);
    }
    Ok(FpTree {
        items: kept.iter().map(|(i, _)| (*i).clone()).collect(),
        counts: kept.iter().map(|&(_, c)| c).collect(),
        tree,
        transactions: n,
        min_count: threshold,
    })
}

impl<I: Ord + Clone> FpTree<I> {
    /// Surviving items with their counts, in tree order.
    pub fn item_order(&self) -> impl Iterator<Item = (&I, usize)> {
        self.items.iter().zip(self.counts.iter().copied())
    }

    pub fn transaction_count(&self) -> usize {
        self.transactions
    }

    pub fn nodes(&self) -> &[FpNode] {
        &self.tree.nodes
    }

    /// Node indices holding `item`, or `None` if it was pruned.
    pub fn header_chain(&self, item: &I) -> Option<&[usize]> {
        let r = self.items.iter().position(|i| i == item)?;
        Some(&self.tree.header[r])
    }

    pub fn item_of(&self, node: &FpNode) -> Option<&I> {
        node.item.map(|r| &self.items[r])
    }
}

/// Every itemset of support `>= min_support` (and at most `max_len` items),
/// by recursive conditional trees starting from the least frequent item.
/// Output is sorted by size, then items.
pub fn mine_frequent<I: Ord + Clone>(
    tree: &FpTree<I>,
    min_support: f64,
    max_len: Option<usize>,
) -> Result<Vec<FrequentItemset<I>>, ArmError> {
    check_support(min_support)?;
    let threshold = min_count(min_support, tree.transactions);
    if threshold < tree.min_count {
        return Err(ArmError::ThresholdMismatch);
    }
    let max_len = max_len.unwrap_or(usize::MAX);
    let mut found: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut suffix = Vec::new();
    grow(&tree.tree, threshold, max_len, &mut suffix, &mut found);
    let n = tree.transactions as f64;
    let mut out: Vec<FrequentItemset<I>> = found
        .into_iter()
        .map(|(ranks, count)| {
            let mut items: Vec<I> = ranks.iter().map(|&r| tree.items[r].clone()).collect();
            items.sort();
            FrequentItemset {
                items,
                count,
                support: count as f64 / n,
            }
        })
        .collect();
    out.sort_by(|a, b| a.items.len().cmp(&b.items.len()).then_with(|| a.items.cmp(&b.items)));
    Ok(out)
}

fn grow(
    tree: &RankTree,
    threshold: usize,
    max_len: usize,
    suffix: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, usize)>,
) {
    if suffix.len() >= max_len {
        return;
    }
    for r in (0..tree.header.len()).rev() {
        let count = tree.rank_count(r);
        if count < threshold {
            continue;
        }
        suffix.push(r);
        out.push((suffix.clone(), count));
        let base = tree.pattern_base(r);
        let mut local = vec![0usize; r];
        for (path, c) in &base {
            for &p in path {
                local[p] += c;
            }
        }
        if local.iter().any(|&c| c >= threshold) {
            let mut cond = RankTree::new(r);
            for (path, c) in &base {
                let kept: Vec<usize> = path.iter().copied().filter(|&p| local[p] >= threshold).collect();
                cond.insert(&kept, *c);
            }
            grow(&cond, threshold, max_len, suffix, out);
        }
        suffix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus() -> Vec<Vec<char>> {
        vec![vec!['a', 'b'], vec!['b', 'c'], vec!['a', 'b', 'c'], vec!['b']]
    }

    #[test]
    fn two_pass_construction() {
        let t = build_fptree(&corpus(), 0.5).unwrap();
        let order: Vec<(char, usize)> = t.item_order().map(|(&i, c)| (i, c)).collect();
        assert_eq!(order, vec![('b', 4), ('a', 2), ('c', 2)]);
        let root = &t.nodes()[0];
        assert_eq!(root.children.len(), 1);
        let b = &t.nodes()[*root.children.values().next().unwrap()];
        assert_eq!((t.item_of(b), b.count), (Some(&'b'), 4));
        // each header chain visits every node of its item once
        for (item, count) in t.item_order() {
            let chain = t.header_chain(item).unwrap();
            let total: usize = chain.iter().map(|&n| t.nodes()[n].count).sum();
            assert_eq!(total, count);
            assert_eq!(t.nodes().iter().filter(|n| t.item_of(n) == Some(item)).count(), chain.len());
        }
    }

    #[test]
    fn identical_transactions_form_one_path() {
        let t = build_fptree(&vec![vec![3, 1, 2]; 5], 1.0).unwrap();
        assert!(t.nodes().iter().all(|n| n.children.len() <= 1));
        assert_eq!(t.nodes().len(), 4);
    }

    #[test]
    fn threshold_above_all_leaves_root_only() {
        let t = build_fptree(&corpus(), 1.0).unwrap();
        assert_eq!(t.nodes().len(), 2);
        let t = build_fptree(&[vec!['a'], vec!['b'], vec!['c']], 0.5).unwrap();
        assert_eq!(t.nodes().len(), 1);
    }

    #[test]
    fn mines_hand_example() {
        let t = build_fptree(&corpus(), 0.5).unwrap();
        let sets = mine_frequent(&t, 0.5, None).unwrap();
        let got: Vec<(String, f64)> = sets
            .iter()
            .map(|s| (s.items.iter().collect::<String>(), s.support))
            .collect();
        let want: Vec<(String, f64)> = [("a", 0.5), ("b", 1.0), ("c", 0.5), ("ab", 0.5), ("bc", 0.5)]
            .iter()
            .map(|(s, v)| (s.to_string(), *v))
            .collect();
        assert_eq!(got, want);
        let t = build_fptree(&[vec!['x', 'y']], 1.0).unwrap();
        assert_eq!(mine_frequent(&t, 1.0, None).unwrap().len(), 3);
        assert_eq!(mine_frequent(&t, 1.0, Some(1)).unwrap().len(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(build_fptree::<u8>(&[], 0.5), Err(ArmError::Empty)));
        assert!(matches!(build_fptree(&[vec![1]], 0.0), Err(ArmError::InvalidSupport(_))));
        let t = build_fptree(&corpus(), 0.75).unwrap();
        assert!(matches!(mine_frequent(&t, 0.5, None), Err(ArmError::ThresholdMismatch)));
    }
}
