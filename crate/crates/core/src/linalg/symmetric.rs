use std::ops::Deref;

use super::Matrix;
use crate::error::{Error, Result};

/// Square matrix checked for symmetry at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix(Matrix);

impl SymmetricMatrix {
    /// Accepts `a` when `|a_ij - a_ji| <= 1e-12 * max(1, |a_ij|)` for all pairs.
    pub fn new(a: Matrix) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(Error::DimensionMismatch(format!(
                "symmetric matrix must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        for i in 0..n {
            for j in (i + 1)..n {
                let (x, y) = (a.get(i, j), a.get(j, i));
                if (x - y).abs() > 1e-12 * x.abs().max(1.0) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self(a))
    }

    /// Averages `a` with its transpose. Used for products that are symmetric
    /// in exact arithmetic but may not be bitwise.
    pub fn symmetrize(a: &Matrix) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(Error::DimensionMismatch(format!(
                "cannot symmetrize {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        let m = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                a.get(i, i)
            } else {
                0.5 * (a.get(i, j) + a.get(j, i))
            }
        });
        Ok(Self(m))
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    pub fn trace(&self) -> f64 {
        (0..self.order()).map(|i| self.0.get(i, i)).sum()
    }

    /// `self + shift * I`.
    pub fn with_diagonal_shift(&self, shift: f64) -> Self {
        let mut m = self.0.clone();
        for i in 0..m.rows() {
            m.set(i, i, m.get(i, i) + shift);
        }
        Self(m)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

impl Deref for SymmetricMatrix {
    type Target = Matrix;

    fn deref(&self) -> &Matrix {
        &self.0
    }
}
