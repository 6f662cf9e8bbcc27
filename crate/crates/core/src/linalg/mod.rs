//! Dense real linear algebra used by the CCA solver: centering, covariance
//! blocks, Cholesky factorization with triangular solves, cyclic Jacobi
//! eigendecomposition, and a thin SVD built on top of it.
//!
//! Everything here is deterministic: the same input bits produce the same
//! output bits, including when matrix products run on multiple threads.

mod cholesky;
mod eigen;
mod matrix;
mod stats;
mod svd;
mod symmetric;

pub use cholesky::{cholesky, solve_lower, solve_lower_transpose};
pub use eigen::{sym_eigen, SymEigen};
pub use matrix::{dot, norm, Matrix};
pub use stats::{center_columns, covariance_blocks, CovarianceBlocks};
pub use svd::{thin_svd, Svd};
pub use symmetric::SymmetricMatrix;

pub(crate) use eigen::{dominant_index, flip_column};
