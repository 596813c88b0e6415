//! Order statistics shared by the feature extractor and the dataset builder.

use crate::scalar::Scalar;

/// Median with the midpoint convention: the mean of the two central order
/// statistics for even-length samples. Returns `None` for an empty sample.
pub fn median<T: Scalar>(values: &[T]) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sort_floats(&mut sorted);
    let n = sorted.len();
    if n % 2 == 1 {
        Some(sorted[n / 2])
    } else {
        Some((sorted[n / 2 - 1] + sorted[n / 2]) / T::of(2.0))
    }
}

/// Percentile `q ∈ [0, 1]` by linear interpolation between ascending order
/// statistics at rank `q·(n−1)`.
pub fn percentile<T: Scalar>(values: &[T], q: T) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sort_floats(&mut sorted);
    Some(percentile_sorted(&sorted, q))
}

/// Same as [`percentile`] for input that is already sorted ascending.
pub fn percentile_sorted<T: Scalar>(sorted: &[T], q: T) -> T {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let rank = q.max(T::zero()).min(T::one()) * T::count(n - 1);
    let lo = rank.floor();
    let lo_idx = lo.to_usize().unwrap_or(0).min(n - 1);
    let hi_idx = (lo_idx + 1).min(n - 1);
    let frac = rank - lo;
    sorted[lo_idx] + (sorted[hi_idx] - sorted[lo_idx]) * frac
}

pub fn mean<T: Scalar>(values: &[T]) -> Option<T> {
    if values.is_empty() {
        None
    } else {
        Some(values.iter().copied().sum::<T>() / T::count(values.len()))
    }
}

/// Population standard deviation.
pub fn std_dev<T: Scalar>(values: &[T]) -> Option<T> {
    let m = mean(values)?;
    let var = values.iter().map(|&v| (v - m) * (v - m)).sum::<T>() / T::count(values.len());
    Some(var.sqrt())
}

pub(crate) fn sort_floats<T: Scalar>(values: &mut [T]) {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_odd_and_even() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median::<f64>(&[]), None);
    }

    #[test]
    fn quartiles_by_interpolation() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(percentile(&v, 0.25), Some(1.75));
        assert_eq!(percentile(&v, 0.5), Some(2.5));
        assert_eq!(percentile(&v, 0.75), Some(3.25));
        assert_eq!(percentile(&[0.0, 10.0], 0.25), Some(2.5));
        assert_eq!(percentile(&[7.0f32], 0.9), Some(7.0));
    }

    #[test]
    fn population_std() {
        assert_eq!(std_dev(&[1.0, 1.0, 1.0]), Some(0.0));
        assert_eq!(std_dev(&[0.0, 2.0]), Some(1.0));
    }
}
