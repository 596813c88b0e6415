use graphhard_core::arm::{build_fptree, evaluate_rule, generate_rules, mine_frequent, rank_rules, rules_csv};
use graphhard_core::dataset::{quartile_bins, quartile_bins_of, to_transactions, Item};
use graphhard_core::solvers::Hardness;

use super::{load_dataset, Written};
use crate::config::{BinSource, PipelineConfig};
use crate::error::CliError;
use crate::output::{fingerprint_comment, json_with_fingerprint, write_output};

/// Quartile-bins the dataset, mines the hard instances' transactions with
/// FP-growth, and evaluates every `… → class:hard` rule on the full corpus.
/// Writes `bins.json`, `transactions.txt` and `rules.csv` (best first).
pub fn cmd_mine(cfg: &PipelineConfig) -> Result<Written, CliError> {
    let path = cfg.dataset_path(&cfg.mine.dataset);
    let d = load_dataset(&path)?;
    let hard_rows: Vec<usize> = (0..d.len()).filter(|&i| d.labels[i]).collect();
    if hard_rows.is_empty() {
        return Err(CliError::Data(format!("{}: no hard instances to mine", path.display())));
    }
    let bins = match cfg.mine.bins_from {
        BinSource::Full => quartile_bins(&d)?,
        BinSource::Hard => quartile_bins_of(&d, &hard_rows)?,
    };
    let corpus = to_transactions(&d, &bins, None)?;
    if corpus.clamped > 0 {
        log::info!("{} values fell outside their bin range and were clamped", corpus.clamped);
    }
    let hard_items: Vec<Vec<Item>> = corpus
        .transactions
        .iter()
        .filter(|t| t.class == Hardness::Hard)
        .map(|t| t.with_class_item())
        .collect();

    let m = &cfg.mine;
    let tree = build_fptree(&hard_items, m.min_support)?;
    let itemsets = mine_frequent(&tree, m.min_support, Some(m.max_antecedent + 1))?;
    let rules = generate_rules(&itemsets, m.min_confidence, &Item::Class(Hardness::Hard), m.antecedent_floor)?;
    let mut evaluated = rules
        .into_iter()
        .map(|r| evaluate_rule(&r, &corpus.transactions).map(|e| (r, e)))
        .collect::<Result<Vec<_>, _>>()?;
    rank_rules(&mut evaluated);
    log::info!("{} frequent itemsets, {} rules", itemsets.len(), evaluated.len());

    let head = format!(
        "# {}\n# coverage and accuracy evaluated on the full corpus ({} instances, {} hard)\n",
        fingerprint_comment(cfg),
        d.len(),
        hard_rows.len()
    );
    let transactions = format!("# {}\n{}", fingerprint_comment(cfg), corpus.to_text());
    Ok(vec![
        write_output(cfg, "bins.json", &json_with_fingerprint(cfg, &bins))?,
        write_output(cfg, "transactions.txt", &transactions)?,
        write_output(cfg, "rules.csv", &format!("{head}{}", rules_csv(&evaluated)))?,
    ])
}
