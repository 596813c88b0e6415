//! Linear classifiers trained by full-batch gradient descent.

use serde::{Deserialize, Serialize};

use super::MlError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearLoss {
    /// Log-loss on the sigmoid of the margin.
    Logistic,
    /// Hinge loss `max(0, 1 - y z)` with labels in {-1, +1}.
    Hinge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub loss: LinearLoss,
    pub weights: Vec<f64>,
    pub bias: f64,
}

pub(crate) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + e^x)` without overflow.
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

impl LinearModel {
    pub fn zeros(loss: LinearLoss, width: usize) -> Self {
        LinearModel {
            loss,
            weights: vec![0.0; width],
            bias: 0.0,
        }
    }

    pub fn margin(&self, row: &[f64]) -> f64 {
        self.bias + self.weights.iter().zip(row).map(|(w, x)| w * x).sum::<f64>()
    }

    /// Squashed margin in (0, 1); 0.5 is the decision boundary.
    pub fn score(&self, row: &[f64]) -> f64 {
        sigmoid(self.margin(row))
    }

    /// Sample-weighted mean loss plus `l2/2 * |w|^2` (bias unpenalized), and
    /// its (sub)gradient as `(d weights, d bias)`.
    pub fn loss_and_gradient(
        &self,
        x: &[Vec<f64>],
        y: &[bool],
        sample_weights: &[f64],
        l2: f64,
    ) -> (f64, Vec<f64>, f64) {
        let total_weight: f64 = sample_weights.iter().sum();
        let mut loss = 0.0;
        let mut gw = vec![0.0; self.weights.len()];
        let mut gb = 0.0;
        for ((row, &label), &sw) in x.iter().zip(y).zip(sample_weights) {
            let s = if label { 1.0 } else { -1.0 };
            let z = self.margin(row);
            let (l, dz) = match self.loss {
                LinearLoss::Logistic => (softplus(-s * z), -s * sigmoid(-s * z)),
                LinearLoss::Hinge => {
                    let m = 1.0 - s * z;
                    if m > 0.0 {
                        (m, -s)
                    } else {
                        (0.0, 0.0)
                    }
                }
            };
            loss += sw * l;
            let c = sw * dz / total_weight;
            if c != 0.0 {
                for (g, v) in gw.iter_mut().zip(row) {
                    *g += c * v;
                }
                gb += c;
            }
        }
        loss /= total_weight;
        loss += 0.5 * l2 * self.weights.iter().map(|w| w * w).sum::<f64>();
        for (g, w) in gw.iter_mut().zip(&self.weights) {
            *g += l2 * w;
        }
        (loss, gw, gb)
    }

    pub fn fit(
        loss: LinearLoss,
        x: &[Vec<f64>],
        y: &[bool],
        sample_weights: &[f64],
        l2: f64,
        learning_rate: f64,
        epochs: usize,
    ) -> Result<Self, MlError> {
        let width = x.first().map_or(0, Vec::len);
        let mut model = LinearModel::zeros(loss, width);
        for epoch in 0..epochs {
            let (l, gw, gb) = model.loss_and_gradient(x, y, sample_weights, l2);
            if !l.is_finite() {
                return Err(MlError::Diverged { epoch, loss: l });
            }
            for (w, g) in model.weights.iter_mut().zip(&gw) {
                *w -= learning_rate * g;
            }
            model.bias -= learning_rate * gb;
        }
        let (l, ..) = model.loss_and_gradient(x, y, sample_weights, l2);
        if !l.is_finite() || model.weights.iter().any(|w| !w.is_finite()) {
            return Err(MlError::Diverged { epoch: epochs, loss: l });
        }
        Ok(model)
    }
}
