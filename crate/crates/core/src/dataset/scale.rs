use crate::scalar::Scalar;

use super::Dataset;

/// Per-feature min-max scaling fitted on one sample and applicable to others.
#[derive(Debug, Clone, PartialEq)]
pub struct MinMaxScaler<T> {
    pub mins: Vec<T>,
    pub maxs: Vec<T>,
}

impl<T: Scalar> MinMaxScaler<T> {
    /// Fits on non-empty `rows`.
    pub fn fit(rows: &[Vec<T>]) -> Self {
        assert!(!rows.is_empty(), "cannot fit a scaler on no rows");
        let width = rows[0].len();
        let mut mins = vec![T::infinity(); width];
        let mut maxs = vec![T::neg_infinity(); width];
        for row in rows {
            for (j, &v) in row.iter().enumerate() {
                mins[j] = mins[j].min(v);
                maxs[j] = maxs[j].max(v);
            }
        }
        MinMaxScaler { mins, maxs }
    }

    /// `(x − min)/(max − min)`; constant features map to 0. Values outside
    /// the fitted range extend affinely.
    pub fn transform_value(&self, j: usize, v: T) -> T {
        let range = self.maxs[j] - self.mins[j];
        if range > T::zero() {
            (v - self.mins[j]) / range
        } else {
            T::zero()
        }
    }

    pub fn transform_row(&self, row: &[T]) -> Vec<T> {
        row.iter().enumerate().map(|(j, &v)| self.transform_value(j, v)).collect()
    }

    pub fn transform(&self, rows: &[Vec<T>]) -> Vec<Vec<T>> {
        rows.iter().map(|r| self.transform_row(r)).collect()
    }

    pub fn inverse_value(&self, j: usize, v: T) -> T {
        self.mins[j] + v * (self.maxs[j] - self.mins[j])
    }
}

/// Fits on `train` and scales both datasets with the train parameters.
pub fn minmax_scale(train: &Dataset, apply_to: &Dataset) -> (Dataset, Dataset, MinMaxScaler<f64>) {
    let scaler = MinMaxScaler::fit(&train.features);
    let mut a = train.clone();
    a.features = scaler.transform(&train.features);
    let mut b = apply_to.clone();
    b.features = scaler.transform(&apply_to.features);
    (a, b, scaler)
}
