use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{class_name, Dataset, DatasetError};

fn shuffled_classes(labels: &[bool], seed: u64) -> [Vec<usize>; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes = [Vec::new(), Vec::new()];
    for (i, &hard) in labels.iter().enumerate() {
        classes[hard as usize].push(i);
    }
    for c in &mut classes {
        c.shuffle(&mut rng);
    }
    classes
}

/// Train/test index split preserving class proportions. The test size is
/// `ceil(fraction·n)`; each class receives the floor of its proportional
/// share and leftover slots go to the largest fractional remainders.
pub fn stratified_split_indices(
    labels: &[bool],
    test_fraction: f64,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>), DatasetError> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(DatasetError::InvalidFraction(test_fraction));
    }
    let classes = shuffled_classes(labels, seed);
    for (c, members) in classes.iter().enumerate() {
        if members.len() < 2 {
            return Err(DatasetError::ClassTooSmall {
                class: class_name(c == 1),
                count: members.len(),
                need: 2,
            });
        }
    }
    let n = labels.len();
    let n_test = ((test_fraction * n as f64) - 1e-9).ceil() as usize;
    let shares: Vec<f64> = classes
        .iter()
        .map(|c| c.len() as f64 * n_test as f64 / n as f64)
        .collect();
    let mut take: Vec<usize> = shares.iter().map(|s| s.floor() as usize).collect();
    let mut leftover = n_test - take.iter().sum::<usize>();
    let mut by_remainder = [0usize, 1];
    by_remainder.sort_by(|&a, &b| {
        let (ra, rb) = (shares[a] - shares[a].floor(), shares[b] - shares[b].floor());
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });
    for &c in by_remainder.iter().cycle() {
        if leftover == 0 {
            break;
        }
        take[c] += 1;
        leftover -= 1;
    }
    // Keep at least one instance of each class on both sides.
    for c in 0..2 {
        take[c] = take[c].clamp(1, classes[c].len() - 1);
    }
    let mut train = Vec::new();
    let mut test = Vec::new();
    for c in 0..2 {
        test.extend_from_slice(&classes[c][..take[c]]);
        train.extend_from_slice(&classes[c][take[c]..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

pub fn stratified_split(
    d: &Dataset,
    test_fraction: f64,
    seed: u64,
) -> Result<(Dataset, Dataset), DatasetError> {
    let (train, test) = stratified_split_indices(&d.labels, test_fraction, seed)?;
    Ok((d.subset(&train), d.subset(&test)))
}

/// `k` disjoint test folds covering every index. Each class is shuffled and
/// dealt round-robin, continuing the deal across classes so fold sizes differ
/// by at most one.
pub fn stratified_kfold(labels: &[bool], k: usize, seed: u64) -> Result<Vec<Vec<usize>>, DatasetError> {
    if k < 2 {
        return Err(DatasetError::TooFew { need: 2, found: k });
    }
    let classes = shuffled_classes(labels, seed);
    for (c, members) in classes.iter().enumerate() {
        if members.len() < k {
            return Err(DatasetError::ClassTooSmall {
                class: class_name(c == 1),
                count: members.len(),
                need: k,
            });
        }
    }
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    for members in &classes {
        for &i in members {
            folds[next % k].push(i);
            next += 1;
        }
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    Ok(folds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn labels(neg: usize, pos: usize) -> Vec<bool> {
        let mut v = vec![false; neg];
        v.extend(vec![true; pos]);
        v
    }

    fn hard_in(idx: &[usize], l: &[bool]) -> usize {
        idx.iter().filter(|&&i| l[i]).count()
    }

    #[test]
    fn ninety_ten_split() {
        let l = labels(90, 10);
        let (train, test) = stratified_split_indices(&l, 0.2, 1).unwrap();
        assert_eq!(test.len(), 20);
        assert_eq!(hard_in(&test, &l), 2);
        assert_eq!(train.len(), 80);
    }

    #[test]
    fn corpus_sized_split_has_expected_test_counts() {
        let l = labels(3176, 111);
        let (_, test) = stratified_split_indices(&l, 0.2, 0).unwrap();
        assert_eq!(test.len(), 658);
        assert_eq!(hard_in(&test, &l), 22);
    }

    #[test]
    fn split_is_deterministic_and_errors() {
        let l = labels(30, 5);
        assert_eq!(
            stratified_split_indices(&l, 0.3, 9).unwrap(),
            stratified_split_indices(&l, 0.3, 9).unwrap()
        );
        assert!(matches!(
            stratified_split_indices(&labels(10, 1), 0.2, 0),
            Err(DatasetError::ClassTooSmall { class: "hard", .. })
        ));
        assert!(matches!(
            stratified_split_indices(&l, 1.0, 0),
            Err(DatasetError::InvalidFraction(_))
        ));
    }

    #[test]
    fn kfold_examples() {
        let l = labels(8, 2);
        let folds = stratified_kfold(&l, 2, 3).unwrap();
        for f in &folds {
            assert_eq!(f.len(), 5);
            assert_eq!(hard_in(f, &l), 1);
        }
        let l = labels(25, 25);
        for f in stratified_kfold(&l, 5, 3).unwrap() {
            assert_eq!((f.len(), hard_in(&f, &l)), (10, 5));
        }
        assert!(matches!(
            stratified_kfold(&labels(10, 3), 5, 0),
            Err(DatasetError::ClassTooSmall { .. })
        ));
    }

    proptest! {
        #[test]
        fn partitions_are_permutations(neg in 5usize..80, pos in 5usize..30, k in 2usize..5, seed in 0u64..1000) {
            let l = labels(neg, pos);
            let folds = stratified_kfold(&l, k, seed).unwrap();
            let mut all: Vec<usize> = folds.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..neg + pos).collect::<Vec<_>>());
            let global = pos as f64 / (neg + pos) as f64;
            for f in &folds {
                let expected = global * f.len() as f64;
                prop_assert!((hard_in(f, &l) as f64 - expected).abs() <= 1.0 + 1e-9);
            }
            let (train, test) = stratified_split_indices(&l, 0.25, seed).unwrap();
            let mut joined = [train, test.clone()].concat();
            joined.sort_unstable();
            prop_assert_eq!(joined, (0..neg + pos).collect::<Vec<_>>());
            let expected = global * test.len() as f64;
            prop_assert!((hard_in(&test, &l) as f64 - expected).abs() <= 1.0 + 1e-9);
        }
    }
}
