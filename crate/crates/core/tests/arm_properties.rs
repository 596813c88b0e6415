use std::collections::BTreeMap;

use graphhard_core::arm::{brute_force_itemsets, build_fptree, generate_rules, mine_frequent};
use graphhard_testkit::generate::rng;
use graphhard_testkit::oracle::itemset_counts;
use rand::Rng;

fn corpus(seed: u64) -> (Vec<Vec<usize>>, usize) {
    let mut r = rng(seed);
    let k = r.gen_range(1..=12);
    let n = r.gen_range(1..=50);
    let density = r.gen_range(0.1..0.9);
    let t = (0..n)
        .map(|_| (0..k).filter(|_| r.gen_bool(density)).collect())
        .collect();
    (t, k)
}

#[test]
fn fp_growth_matches_exhaustive_enumeration() {
    for seed in 0..200 {
        let (t, k) = corpus(seed);
        let min_support = [0.1, 0.2, 0.35, 0.5][seed as usize % 4];
        let tree = build_fptree(&t, min_support).unwrap();
        let mined = mine_frequent(&tree, min_support, None).unwrap();
        assert_eq!(mined, brute_force_itemsets(&t, min_support).unwrap(), "seed {seed}");

        let n = t.len() as f64;
        let oracle: BTreeMap<Vec<usize>, usize> = itemset_counts(&t, k)
            .into_iter()
            .filter(|(_, c)| *c as f64 / n >= min_support - 1e-12)
            .collect();
        let got: BTreeMap<Vec<usize>, usize> = mined.iter().map(|s| (s.items.clone(), s.count)).collect();
        assert_eq!(got, oracle, "seed {seed}");

        // downward closure
        for s in &mined {
            for skip in 0..s.items.len() {
                let sub: Vec<usize> = s.items.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                if !sub.is_empty() {
                    assert!(got[&sub] >= s.count);
                }
            }
        }
    }
}

#[test]
fn max_len_truncates_only_by_size() {
    for seed in 0..40 {
        let (t, _) = corpus(seed);
        let tree = build_fptree(&t, 0.2).unwrap();
        let all = mine_frequent(&tree, 0.2, None).unwrap();
        let short = mine_frequent(&tree, 0.2, Some(2)).unwrap();
        let want: Vec<_> = all.into_iter().filter(|s| s.items.len() <= 2).collect();
        assert_eq!(short, want);
    }
}

#[test]
fn rule_metric_identities() {
    for seed in 0..100 {
        let (t, k) = corpus(seed);
        let sets = brute_force_itemsets(&t, 0.1).unwrap();
        let support: BTreeMap<Vec<usize>, f64> = sets.iter().map(|s| (s.items.clone(), s.support)).collect();
        for y in 0..k {
            for r in generate_rules(&sets, 0.0, &y, 0.0).unwrap() {
                assert!((r.lift * r.consequent_support - r.confidence).abs() < 1e-12);
                assert!((r.confidence * r.antecedent_support - r.support).abs() < 1e-12);
                assert_eq!(r.antecedent_support, support[&r.antecedent]);
                assert!(r.support <= r.antecedent_support.min(r.consequent_support));
            }
        }
    }
}

#[test]
fn single_class_mining_has_unit_lift() {
    const CLASS: usize = 99;
    for seed in 0..100 {
        let (mut t, _) = corpus(seed);
        t.iter_mut().for_each(|tx| tx.push(CLASS));
        let tree = build_fptree(&t, 0.1).unwrap();
        let sets = mine_frequent(&tree, 0.1, None).unwrap();
        for r in generate_rules(&sets, 0.0, &CLASS, 0.1).unwrap() {
            assert_eq!(r.lift, 1.0);
            assert_eq!(r.confidence, 1.0);
            assert_eq!(r.support, r.antecedent_support);
        }
    }
}
