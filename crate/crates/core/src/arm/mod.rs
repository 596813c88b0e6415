//! Frequent-itemset mining, class-consequent rules and their evaluation.

mod fptree;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::{Item, Transaction};
use crate::solvers::Hardness;

pub use fptree::{build_fptree, mine_frequent, FpNode, FpTree};

/// Antecedent items allowed in a reported rule unless configured otherwise.
pub const DEFAULT_MAX_ANTECEDENT: usize = 4;
/// Largest alphabet the exhaustive miner accepts.
pub const BRUTE_FORCE_ITEM_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArmError {
    #[error("no transactions")]
    Empty,
    #[error("support threshold {0} outside (0, 1]")]
    InvalidSupport(f64),
    #[error("confidence threshold {0} outside [0, 1]")]
    InvalidConfidence(f64),
    #[error("mining threshold is below the one the tree was built with")]
    ThresholdMismatch,
    #[error("{found} distinct items exceed the exhaustive limit of {limit}")]
    TooManyItems { found: usize, limit: usize },
    #[error("itemset {0} is frequent but its projection {1} is missing")]
    MissingProjection(String, String),
    #[error("evaluation corpus lacks {0} instances")]
    MissingClass(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequentItemset<I> {
    /// Sorted ascending.
    pub items: Vec<I>,
    pub count: usize,
    /// `count / transactions`.
    pub support: f64,
}

/// Exhaustive powerset enumeration over the distinct items.
pub fn brute_force_itemsets<I: Ord + Clone + Hash>(
    transactions: &[Vec<I>],
    min_support: f64,
) -> Result<Vec<FrequentItemset<I>>, ArmError> {
    fptree::check_support(min_support)?;
    if transactions.is_empty() {
        return Ok(Vec::new());
    }
    let alphabet: Vec<I> = transactions.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if alphabet.len() > BRUTE_FORCE_ITEM_LIMIT {
        return Err(ArmError::TooManyItems {
            found: alphabet.len(),
            limit: BRUTE_FORCE_ITEM_LIMIT,
        });
    }
    let index: HashMap<&I, usize> = alphabet.iter().enumerate().map(|(k, i)| (i, k)).collect();
    let masks: Vec<u32> = transactions
        .iter()
        .map(|t| t.iter().fold(0u32, |m, i| m | 1 << index[i]))
        .collect();
    let n = transactions.len();
    let threshold = fptree::min_count(min_support, n);
    let mut out = Vec::new();
    for set in 1u32..(1u32 << alphabet.len()) {
        let count = masks.iter().filter(|&&m| m & set == set).count();
        if count >= threshold {
            out.push(FrequentItemset {
                items: (0..alphabet.len())
                    .filter(|k| set >> k & 1 == 1)
                    .map(|k| alphabet[k].clone())
                    .collect(),
                count,
                support: count as f64 / n as f64,
            });
        }
    }
    out.sort_by(|a, b| a.items.len().cmp(&b.items.len()).then_with(|| a.items.cmp(&b.items)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssociationRule<I> {
    /// Sorted ascending.
    pub antecedent: Vec<I>,
    pub consequent: I,
    /// Support of antecedent ∪ consequent.
    pub support: f64,
    pub antecedent_support: f64,
    pub consequent_support: f64,
    pub confidence: f64,
    pub lift: f64,
}

fn describe<I: std::fmt::Debug>(items: &[I]) -> String {
    format!("{items:?}")
}

/// Emits `X → consequent` for every frequent `X ∪ {consequent}` with
/// non-empty `X`, keeping rules with confidence `>= min_confidence` and
/// antecedent support `>= antecedent_floor`. Ratios are taken on exact
/// counts. Rules come out in itemset order.
pub fn generate_rules<I: Ord + Clone + std::fmt::Debug>(
    itemsets: &[FrequentItemset<I>],
    min_confidence: f64,
    consequent: &I,
    antecedent_floor: f64,
) -> Result<Vec<AssociationRule<I>>, ArmError> {
    if !(0.0..=1.0).contains(&min_confidence) {
        return Err(ArmError::InvalidConfidence(min_confidence));
    }
    let Some(first) = itemsets.first() else {
        return Ok(Vec::new());
    };
    // supports are count / N, so this recovers N exactly
    let n = (first.count as f64 / first.support).round();
    let counts: BTreeMap<&[I], usize> = itemsets.iter().map(|s| (s.items.as_slice(), s.count)).collect();
    let lookup = |items: &[I], whole: &[I]| {
        counts
            .get(items)
            .copied()
            .ok_or_else(|| ArmError::MissingProjection(describe(whole), describe(items)))
    };
    let mut rules = Vec::new();
    for set in itemsets {
        if set.items.len() < 2 || !set.items.contains(consequent) {
            continue;
        }
        let antecedent: Vec<I> = set.items.iter().filter(|&i| i != consequent).cloned().collect();
        let x = lookup(&antecedent, &set.items)?;
        let y = lookup(std::slice::from_ref(consequent), &set.items)?;
        let confidence = set.count as f64 / x as f64;
        let consequent_support = y as f64 / n;
        let antecedent_support = x as f64 / n;
        if confidence < min_confidence || antecedent_support < antecedent_floor {
            continue;
        }
        rules.push(AssociationRule {
            antecedent,
            consequent: consequent.clone(),
            support: set.support,
            antecedent_support,
            consequent_support,
            confidence,
            lift: confidence / consequent_support,
        });
    }
    Ok(rules)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuleEvaluation {
    /// Hard instances satisfying the antecedent, over all hard instances.
    pub hard_coverage: f64,
    /// Not-hard instances violating the antecedent, over all not-hard.
    pub nothard_exclusion: f64,
    /// `(tp + tn) / N` with the antecedent read as a hard prediction.
    pub overall_accuracy: f64,
    pub tp: usize,
    pub fn_: usize,
    pub fp: usize,
    pub tn: usize,
}

/// Scores an antecedent as a predictor of hardness over a labeled corpus.
pub fn evaluate_antecedent(antecedent: &[Item], corpus: &[Transaction]) -> Result<RuleEvaluation, ArmError> {
    let (mut tp, mut fn_, mut fp, mut tn) = (0, 0, 0, 0);
    for t in corpus {
        let fires = t.contains_all(antecedent);
        match (t.class, fires) {
            (Hardness::Hard, true) => tp += 1,
            (Hardness::Hard, false) => fn_ += 1,
            (Hardness::NotHard, true) => fp += 1,
            (Hardness::NotHard, false) => tn += 1,
        }
    }
    if tp + fn_ == 0 {
        return Err(ArmError::MissingClass("hard"));
    }
    if fp + tn == 0 {
        return Err(ArmError::MissingClass("not_hard"));
    }
    Ok(RuleEvaluation {
        hard_coverage: tp as f64 / (tp + fn_) as f64,
        nothard_exclusion: tn as f64 / (fp + tn) as f64,
        overall_accuracy: (tp + tn) as f64 / corpus.len() as f64,
        tp,
        fn_,
        fp,
        tn,
    })
}

pub fn evaluate_rule(rule: &AssociationRule<Item>, corpus: &[Transaction]) -> Result<RuleEvaluation, ArmError> {
    evaluate_antecedent(&rule.antecedent, corpus)
}

/// Best first: overall accuracy, then hard coverage (both descending),
/// then shorter antecedents, then antecedent order.
pub fn rank_rules(rules: &mut [(AssociationRule<Item>, RuleEvaluation)]) {
    rules.sort_by(|(ra, ea), (rb, eb)| {
        eb.overall_accuracy
            .total_cmp(&ea.overall_accuracy)
            .then_with(|| eb.hard_coverage.total_cmp(&ea.hard_coverage))
            .then_with(|| ra.antecedent.len().cmp(&rb.antecedent.len()))
            .then_with(|| ra.antecedent.cmp(&rb.antecedent))
    });
}

fn term(item: &Item) -> String {
    match item {
        Item::Band { feature, band } => format!("{feature}∈{band}"),
        Item::Class(_) => item.to_string(),
    }
}

pub const RULE_COLUMNS: [&str; 8] = [
    "antecedent",
    "consequent",
    "support",
    "confidence",
    "lift",
    "hard_coverage",
    "nothard_exclusion",
    "overall_accuracy",
];

/// Rule report rows in the given order; reals printed with six decimals.
pub fn rules_csv(rules: &[(AssociationRule<Item>, RuleEvaluation)]) -> String {
    let mut out = RULE_COLUMNS.join(",");
    out.push('\n');
    for (r, e) in rules {
        let antecedent: Vec<String> = r.antecedent.iter().map(term).collect();
        out.push_str(&format!(
            "{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
            antecedent.join(";"),
            r.consequent,
            r.support,
            r.confidence,
            r.lift,
            e.hard_coverage,
            e.nothard_exclusion,
            e.overall_accuracy
        ));
    }
    out
}
