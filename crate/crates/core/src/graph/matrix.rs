use crate::scalar::Scalar;

use super::{Graph, GraphError};

/// Dense symmetric matrix stored row-major. Symmetry is exact: every
/// constructor writes `(i, j)` and `(j, i)` from the same value.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Scalar> SymmetricMatrix<T> {
    pub fn zeros(order: usize) -> Self {
        SymmetricMatrix {
            order,
            entries: vec![T::zero(); order * order],
        }
    }

    /// Builds the matrix from the upper triangle: `f(i, j)` is called for `i <= j`.
    pub fn from_upper<F: FnMut(usize, usize) -> T>(order: usize, mut f: F) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            for j in i..order {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.order + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.order + j] = value;
        self.entries[j * self.order + i] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn trace(&self) -> T {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|v| v.is_finite())
    }
}

pub fn adjacency_matrix<T: Scalar>(g: &Graph) -> Result<SymmetricMatrix<T>, GraphError> {
    if g.is_empty() {
        return Err(GraphError::Empty);
    }
    let mut m = SymmetricMatrix::zeros(g.vertex_count());
    for (u, v) in g.edges() {
        m.set(u, v, T::one());
    }
    Ok(m)
}

/// `L = D − A`.
pub fn laplacian_matrix<T: Scalar>(g: &Graph) -> Result<SymmetricMatrix<T>, GraphError> {
    if g.is_empty() {
        return Err(GraphError::Empty);
    }
    let mut m = SymmetricMatrix::zeros(g.vertex_count());
    for v in 0..g.vertex_count() {
        m.set(v, v, T::count(g.degree(v)));
    }
    for (u, v) in g.edges() {
        m.set(u, v, -T::one());
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_examples() {
        let a: SymmetricMatrix<f64> = adjacency_matrix(&Graph::complete(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a.get(i, j), if i == j { 0.0 } else { 1.0 });
            }
        }
        let single: SymmetricMatrix<f64> = adjacency_matrix(&Graph::empty(1)).unwrap();
        assert_eq!(single.get(0, 0), 0.0);
        let p: SymmetricMatrix<f32> = adjacency_matrix(&Graph::path(3)).unwrap();
        assert_eq!((p.get(0, 1), p.get(1, 2), p.get(0, 2)), (1.0, 1.0, 0.0));
        assert!(adjacency_matrix::<f64>(&Graph::empty(0)).is_err());
    }

    #[test]
    fn laplacian_examples() {
        let l: SymmetricMatrix<f64> = laplacian_matrix(&Graph::complete(3)).unwrap();
        assert_eq!(l.row(0), &[2.0, -1.0, -1.0]);
        let z: SymmetricMatrix<f64> = laplacian_matrix(&Graph::empty(3)).unwrap();
        assert!(z.row(1).iter().all(|&v| v == 0.0));
        let p: SymmetricMatrix<f64> = laplacian_matrix(&Graph::path(3)).unwrap();
        assert_eq!(p.row(0), &[1.0, -1.0, 0.0]);
        assert_eq!(p.row(1), &[-1.0, 2.0, -1.0]);
        assert_eq!(p.row(2), &[0.0, -1.0, 1.0]);
        assert!(laplacian_matrix::<f64>(&Graph::empty(0)).is_err());
    }
}
