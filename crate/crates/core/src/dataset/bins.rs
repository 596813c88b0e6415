//! Quartile bands per feature and the transaction encoding used for rule mining.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::solvers::Hardness;
use crate::stats::{percentile_sorted, sort_floats};

use super::{Dataset, DatasetError};

/// Quartile band: Q1 = [P0, P25], Q2 = (P25, P50], Q3 = (P50, P75], Q4 = (P75, P100].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Band {
    Q1,
    Q2,
    Q3,
    Q4,
}

impl Band {
    pub const ALL: [Band; 4] = [Band::Q1, Band::Q2, Band::Q3, Band::Q4];

    pub fn index(self) -> usize {
        self as usize + 1
    }

    /// Percentile labels of the band's lower and upper edge.
    pub fn percentile_range(self) -> (u8, u8) {
        let lo = (self.index() as u8 - 1) * 25;
        (lo, lo + 25)
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}", self.index())
    }
}

impl FromStr for Band {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q1" => Ok(Band::Q1),
            "Q2" => Ok(Band::Q2),
            "Q3" => Ok(Band::Q3),
            "Q4" => Ok(Band::Q4),
            other => Err(format!("unknown band {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureBins {
    pub feature: String,
    /// P0, P25, P50, P75, P100.
    pub edges: [f64; 5],
}

impl FeatureBins {
    /// Band of `value`; the flag is set when the value lies outside
    /// `[P0, P100]` and was clamped to the nearest band.
    pub fn band(&self, value: f64) -> (Band, bool) {
        let e = &self.edges;
        let clamped = value < e[0] || value > e[4];
        let band = if value <= e[1] {
            Band::Q1
        } else if value <= e[2] {
            Band::Q2
        } else if value <= e[3] {
            Band::Q3
        } else {
            Band::Q4
        };
        (band, clamped)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinScheme {
    pub features: Vec<FeatureBins>,
}

impl BinScheme {
    pub fn get(&self, feature: &str) -> Option<&FeatureBins> {
        self.features.iter().find(|b| b.feature == feature)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bins serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, DatasetError> {
        serde_json::from_str(text).map_err(|e| DatasetError::Shape(e.to_string()))
    }
}

/// Quartile edges of every feature over all rows of `d`.
pub fn quartile_bins(d: &Dataset) -> Result<BinScheme, DatasetError> {
    quartile_bins_of(d, &(0..d.len()).collect::<Vec<_>>())
}

/// Quartile edges computed over the rows at `rows` only.
pub fn quartile_bins_of(d: &Dataset, rows: &[usize]) -> Result<BinScheme, DatasetError> {
    if rows.len() < 4 {
        return Err(DatasetError::TooFew {
            need: 4,
            found: rows.len(),
        });
    }
    let features = d
        .feature_names
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let mut col: Vec<f64> = rows.iter().map(|&i| d.features[i][j]).collect();
            sort_floats(&mut col);
            let edges = [0.0, 0.25, 0.5, 0.75, 1.0].map(|q| percentile_sorted(&col, q));
            FeatureBins {
                feature: name.clone(),
                edges,
            }
        })
        .collect();
    Ok(BinScheme { features })
}

/// A rule-mining item: a feature's quartile band, or the class tag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Item {
    Band { feature: String, band: Band },
    Class(Hardness),
}

impl Item {
    pub fn band(feature: &str, band: Band) -> Item {
        Item::Band {
            feature: feature.to_string(),
            band,
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Band { feature, band } => write!(f, "{feature}:{band}"),
            Item::Class(h) => write!(f, "class:{}", super::class_name(h.is_hard())),
        }
    }
}

impl FromStr for Item {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (key, value) = s
            .rsplit_once(':')
            .ok_or_else(|| format!("item {s:?} lacks ':'"))?;
        if key == "class" {
            return match value {
                "hard" => Ok(Item::Class(Hardness::Hard)),
                "not_hard" => Ok(Item::Class(Hardness::NotHard)),
                other => Err(format!("unknown class {other:?}")),
            };
        }
        Ok(Item::Band {
            feature: key.to_string(),
            band: value.parse()?,
        })
    }
}

/// One band item per feature plus the instance's class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    pub items: Vec<Item>,
    pub class: Hardness,
}

impl Transaction {
    /// Band items followed by the class item.
    pub fn with_class_item(&self) -> Vec<Item> {
        let mut v = self.items.clone();
        v.push(Item::Class(self.class));
        v
    }

    pub fn contains_all(&self, items: &[Item]) -> bool {
        items.iter().all(|i| match i {
            Item::Class(c) => *c == self.class,
            band => self.items.contains(band),
        })
    }

    pub fn to_line(&self) -> String {
        self.with_class_item()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_line(line: &str) -> Result<Self, String> {
        let mut items = Vec::new();
        let mut class = None;
        for token in line.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match token.parse::<Item>()? {
                Item::Class(c) => class = Some(c),
                band => items.push(band),
            }
        }
        Ok(Transaction {
            items,
            class: class.ok_or_else(|| format!("line {line:?} has no class item"))?,
        })
    }
}

/// Encoded transactions plus the number of values that fell outside their
/// scheme's `[P0, P100]` and were clamped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transactions {
    pub transactions: Vec<Transaction>,
    pub clamped: usize,
}

impl Transactions {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for t in &self.transactions {
            s.push_str(&t.to_line());
            s.push('\n');
        }
        s
    }
}

/// Encodes each instance (optionally only those of `class_filter`) as a
/// transaction over the scheme's features.
pub fn to_transactions(
    d: &Dataset,
    bins: &BinScheme,
    class_filter: Option<Hardness>,
) -> Result<Transactions, DatasetError> {
    let columns: Vec<(usize, &FeatureBins)> = bins
        .features
        .iter()
        .map(|b| {
            d.feature_position(&b.feature)
                .map(|j| (j, b))
                .ok_or_else(|| DatasetError::Shape(format!("dataset lacks feature {}", b.feature)))
        })
        .collect::<Result<_, _>>()?;
    let mut clamped = 0;
    let mut transactions = Vec::new();
    for (row, &hard) in d.features.iter().zip(&d.labels) {
        let class = if hard { Hardness::Hard } else { Hardness::NotHard };
        if class_filter.is_some_and(|c| c != class) {
            continue;
        }
        let items = columns
            .iter()
            .map(|&(j, b)| {
                let (band, was_clamped) = b.band(row[j]);
                clamped += was_clamped as usize;
                Item::band(&b.feature, band)
            })
            .collect();
        transactions.push(Transaction { items, class });
    }
    Ok(Transactions {
        transactions,
        clamped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn one_column(values: &[f64], labels: Vec<bool>) -> Dataset {
        Dataset::from_rows(values.iter().map(|&v| vec![v]).collect(), labels).unwrap()
    }

    #[test]
    fn quartile_edges() {
        let d = one_column(&[1.0, 2.0, 3.0, 4.0], vec![false; 4]);
        let b = quartile_bins(&d).unwrap();
        assert_eq!(b.features[0].edges, [1.0, 1.75, 2.5, 3.25, 4.0]);
        let c = quartile_bins(&one_column(&[7.0; 5], vec![false; 5])).unwrap();
        assert_eq!(c.features[0].edges, [7.0; 5]);
        assert!(matches!(
            quartile_bins(&one_column(&[1.0, 2.0], vec![false; 2])),
            Err(DatasetError::TooFew { need: 4, found: 2 })
        ));
    }

    #[test]
    fn boundary_values_fall_in_lower_band() {
        let b = FeatureBins {
            feature: "x".into(),
            edges: [0.0, 1.0, 2.0, 3.0, 4.0],
        };
        assert_eq!(b.band(0.0), (Band::Q1, false));
        assert_eq!(b.band(2.0), (Band::Q2, false));
        assert_eq!(b.band(2.5), (Band::Q3, false));
        assert_eq!(b.band(4.0), (Band::Q4, false));
        assert_eq!(b.band(-1.0), (Band::Q1, true));
        assert_eq!(b.band(9.0), (Band::Q4, true));
    }

    #[test]
    fn transactions_and_filter() {
        let d = Dataset::from_rows(
            vec![vec![0.0, 5.0], vec![1.0, 6.0], vec![2.0, 7.0], vec![3.0, 8.0]],
            vec![false, true, false, true],
        )
        .unwrap();
        let bins = quartile_bins(&d).unwrap();
        let all = to_transactions(&d, &bins, None).unwrap();
        assert_eq!(all.transactions.len(), 4);
        assert!(all.transactions[0].items.iter().all(|i| matches!(i, Item::Band { band: Band::Q1, .. })));
        let hard = to_transactions(&d, &bins, Some(Hardness::Hard)).unwrap();
        assert_eq!(hard.transactions.len(), 2);
        assert_eq!(hard.transactions[0].to_line(), "f0:Q2,f1:Q2,class:hard");
        assert_eq!(Transaction::parse_line("f0:Q2,f1:Q2,class:hard").unwrap(), hard.transactions[0]);
        assert_eq!(all.clamped, 0);
    }

    #[test]
    fn foreign_values_are_clamped_and_counted() {
        let d = one_column(&[1.0, 2.0, 3.0, 4.0], vec![false; 4]);
        let bins = quartile_bins(&d).unwrap();
        let other = one_column(&[0.0, 9.0], vec![false, true]);
        let t = to_transactions(&other, &bins, None).unwrap();
        assert_eq!(t.clamped, 2);
        assert_eq!(t.transactions[1].items[0], Item::band("f0", Band::Q4));
    }

    #[test]
    fn item_text_round_trip() {
        for s in ["num_nodes:Q4", "class:not_hard", "a:b:Q1"] {
            assert_eq!(s.parse::<Item>().unwrap().to_string(), s);
        }
        assert!("x:Q5".parse::<Item>().is_err());
    }

    proptest! {
        #[test]
        fn bands_survive_increasing_affine_maps(
            values in proptest::collection::vec(-100.0f64..100.0, 4..40),
            scale in 0.5f64..20.0,
            shift in -50.0f64..50.0,
        ) {
            let n = values.len();
            let original = one_column(&values, vec![false; n]);
            let mapped: Vec<f64> = values.iter().map(|v| v * scale + shift).collect();
            let moved = one_column(&mapped, vec![false; n]);
            let a = to_transactions(&original, &quartile_bins(&original).unwrap(), None).unwrap();
            let b = to_transactions(&moved, &quartile_bins(&moved).unwrap(), None).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
