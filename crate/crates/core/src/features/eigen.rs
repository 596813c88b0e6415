//! Dense symmetric eigensolver: Householder reduction to tridiagonal form
//! followed by the implicit QL iteration.

use thiserror::Error;

use crate::graph::SymmetricMatrix;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EigenError {
    #[error("matrix has order 0")]
    Empty,
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("QL iteration did not converge for eigenvalue {index}")]
    NoConvergence { index: usize },
}

/// Eigenvalues of a symmetric matrix in ascending order, with the tolerance
/// used to decide which of them count as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    eigenvalues: Vec<T>,
    tol: T,
}

impl<T: Scalar> Spectrum<T> {
    /// Wraps precomputed eigenvalues; they are sorted on construction.
    pub fn new(mut eigenvalues: Vec<T>, tol: T) -> Self {
        crate::stats::sort_floats(&mut eigenvalues);
        Spectrum { eigenvalues, tol }
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    /// Largest eigenvalue magnitude.
    pub fn radius(&self) -> T {
        self.eigenvalues
            .iter()
            .fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    /// `|λ| ≤ tol · max(1, radius)`.
    pub fn is_zero(&self, lambda: T) -> bool {
        lambda.abs() <= self.tol * T::one().max(self.radius())
    }

    pub fn zero_count(&self) -> usize {
        self.eigenvalues.iter().filter(|&&v| self.is_zero(v)).count()
    }

    /// Eigenvalues not classified as zero, ascending.
    pub fn nonzero(&self) -> impl Iterator<Item = T> + '_ {
        self.eigenvalues.iter().copied().filter(|&v| !self.is_zero(v))
    }

    pub fn smallest(&self) -> Option<T> {
        self.eigenvalues.first().copied()
    }

    pub fn largest(&self) -> Option<T> {
        self.eigenvalues.last().copied()
    }

    /// `k`-th smallest, 0-based.
    pub fn ascending(&self, k: usize) -> Option<T> {
        self.eigenvalues.get(k).copied()
    }

    /// `k`-th largest, 0-based.
    pub fn descending(&self, k: usize) -> Option<T> {
        self.eigenvalues.len().checked_sub(k + 1).map(|i| self.eigenvalues[i])
    }
}

/// All eigenvalues of `m`, ascending.
pub fn symmetric_eigenvalues<T: Scalar>(
    m: &SymmetricMatrix<T>,
    tol: T,
) -> Result<Spectrum<T>, EigenError> {
    let n = m.order();
    if n == 0 {
        return Err(EigenError::Empty);
    }
    if !m.is_finite() {
        return Err(EigenError::NonFinite);
    }
    let mut v: Vec<Vec<T>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tridiagonalize(&mut v, &mut d, &mut e);
    ql_implicit(&mut v, &mut d, &mut e)?;
    Ok(Spectrum::new(d, tol))
}

/// Householder reduction. On return `d` holds the diagonal and `e[1..]` the
/// sub-diagonal of the tridiagonal matrix; `v` holds the accumulated transform.
fn tridiagonalize<T: Scalar>(v: &mut [Vec<T>], d: &mut [T], e: &mut [T]) {
    let n = d.len();
    let zero = T::zero();
    for j in 0..n {
        d[j] = v[n - 1][j];
    }
    for i in (1..n).rev() {
        let mut scale = zero;
        let mut h = zero;
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == zero {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = zero;
                v[j][i] = zero;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > zero {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = zero;
            }
            for j in 0..i {
                f = d[j];
                v[j][i] = f;
                g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            f = zero;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    let delta = f * e[k] + g * d[k];
                    v[k][j] -= delta;
                }
                d[j] = v[i - 1][j];
                v[i][j] = zero;
            }
        }
        d[i] = h;
    }

    for i in 0..n.saturating_sub(1) {
        v[n - 1][i] = v[i][i];
        v[i][i] = T::one();
        let h = d[i + 1];
        if h != zero {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = zero;
                for k in 0..=i {
                    g += v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    let delta = g * d[k];
                    v[k][j] -= delta;
                }
            }
        }
        for row in v.iter_mut().take(i + 1) {
            row[i + 1] = zero;
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = zero;
    }
    v[n - 1][n - 1] = T::one();
    e[0] = zero;
}

/// Implicit QL with Wilkinson-style shifts on the tridiagonal `(d, e)`.
fn ql_implicit<T: Scalar>(v: &mut [Vec<T>], d: &mut [T], e: &mut [T]) -> Result<(), EigenError> {
    let n = d.len();
    let zero = T::zero();
    let one = T::one();
    let two = T::of(2.0);
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = zero;

    let mut f = zero;
    let mut tst1 = zero;
    let eps = T::epsilon();
    let max_iter = 30 * n.max(4);
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        // e[n-1] == 0 guarantees the scan stops inside the array.
        let m = m.min(n - 1);
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > max_iter {
                    return Err(EigenError::NoConvergence { index: l });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(one);
                if p < zero {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = one;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = zero;
                let mut s2 = zero;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in v.iter_mut() {
                        let hk = row[i + 1];
                        row[i + 1] = s * row[i] + c * hk;
                        row[i] = c * row[i] - s * hk;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = zero;
    }
    Ok(())
}
