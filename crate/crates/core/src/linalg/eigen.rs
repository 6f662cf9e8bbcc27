//! Symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! Each sweep visits every upper-triangular pair `(p, q)` in row order and
//! annihilates `a[p][q]` with a plane rotation, accumulating the rotations
//! into the eigenvector matrix. A pair is skipped once it is negligible
//! relative to its diagonal entries (or to the matrix norm), and the
//! iteration stops after the first sweep that performs no rotation.

use super::{Matrix, SymmetricMatrix};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with matching unit eigenvectors stored as
/// the columns of `vectors`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl SymEigen {
    pub fn vector(&self, j: usize) -> Vec<f64> {
        self.vectors.col(j)
    }
}

pub fn sym_eigen(a: &SymmetricMatrix) -> SymEigen {
    let n = a.order();
    let mut m = a.as_matrix().as_slice().to_vec();
    let mut vt = Matrix::identity(n).into_vec();

    let norm = a.frobenius_norm();
    let floor = 1e-3 * f64::EPSILON * norm;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let relative = f64::EPSILON * (app.abs() * aqq.abs()).sqrt();
                if apq.abs() <= relative.max(floor) {
                    continue;
                }
                rotated = true;

                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                // Rows p and q mirror columns p and q exactly, so the update
                // reads and writes them contiguously and then copies back.
                let (head, tail) = m.split_at_mut(q * n);
                let row_p = &mut head[p * n..(p + 1) * n];
                let row_q = &mut tail[..n];
                for r in (0..p).chain(p + 1..q).chain(q + 1..n) {
                    let g = row_p[r];
                    let h = row_q[r];
                    row_p[r] = g - s * (h + g * tau);
                    row_q[r] = h + s * (g - h * tau);
                }
                for r in (0..p).chain(p + 1..q).chain(q + 1..n) {
                    m[r * n + p] = m[p * n + r];
                    m[r * n + q] = m[q * n + r];
                }
                // vt holds eigenvectors as rows.
                let (head, tail) = vt.split_at_mut(q * n);
                let vp = &mut head[p * n..(p + 1) * n];
                let vq = &mut tail[..n];
                for (g, h) in vp.iter_mut().zip(vq.iter_mut()) {
                    let (g0, h0) = (*g, *h);
                    *g = g0 - s * (h0 + g0 * tau);
                    *h = h0 + s * (g0 - h0 * tau);
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: equal eigenvalues keep their diagonal order
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));

    let values = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = Matrix::from_fn(n, n, |r, c| vt[order[c] * n + r]);
    for j in 0..n {
        orient_column(&mut vectors, j);
    }
    SymEigen { values, vectors }
}

/// Index of the largest-magnitude entry of column `j` (first on ties).
pub(crate) fn dominant_index(m: &Matrix, j: usize) -> usize {
    let mut best = 0;
    let mut best_abs = -1.0;
    for i in 0..m.rows() {
        let a = m.get(i, j).abs();
        if a > best_abs {
            best = i;
            best_abs = a;
        }
    }
    best
}

/// Flips column `j` so its largest-magnitude entry is positive. Returns
/// whether a flip happened.
pub(crate) fn orient_column(m: &mut Matrix, j: usize) -> bool {
    if m.rows() == 0 {
        return false;
    }
    let i = dominant_index(m, j);
    if m.get(i, j) < 0.0 {
        flip_column(m, j);
        true
    } else {
        false
    }
}

pub(crate) fn flip_column(m: &mut Matrix, j: usize) {
    for i in 0..m.rows() {
        m.set(i, j, -m.get(i, j));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthdata::rng::Stream;

    fn sym(m: Matrix) -> SymmetricMatrix {
        SymmetricMatrix::new(m).unwrap()
    }

    fn random_symmetric(n: usize, seed: u64) -> SymmetricMatrix {
        let mut s = Stream::new(seed, "eigen-test");
        let raw = Matrix::from_fn(n, n, |_, _| s.normal());
        SymmetricMatrix::symmetrize(&raw).unwrap()
    }

    #[test]
    fn diagonal_sorted_descending() {
        let e = sym_eigen(&sym(Matrix::from_rows(&[[2.0, 0.0], [0.0, 3.0]])));
        assert_eq!(e.values, vec![3.0, 2.0]);
        assert_eq!(e.vector(0), vec![0.0, 1.0]);
    }

    #[test]
    fn classic_swap_matrix() {
        let e = sym_eigen(&sym(Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]])));
        assert!((e.values[0] - 1.0).abs() < 1e-15);
        assert!((e.values[1] + 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v0 = e.vector(0);
        let v1 = e.vector(1);
        assert!((v0[0] - h).abs() < 1e-15 && (v0[1] - h).abs() < 1e-15);
        assert!((v1[0] - h).abs() < 1e-15 && (v1[1] + h).abs() < 1e-15);
    }

    #[test]
    fn random_reconstruction_and_orthogonality() {
        let a = random_symmetric(5, 11);
        let e = sym_eigen(&a);
        let lambda = Matrix::from_fn(5, 5, |i, j| if i == j { e.values[i] } else { 0.0 });
        let rebuilt = e
            .vectors
            .matmul(&lambda)
            .unwrap()
            .matmul(&e.vectors.transpose())
            .unwrap();
        assert!(rebuilt.sub(&a).unwrap().max_abs() < 1e-9);
        let vtv = e.vectors.t_matmul(&e.vectors).unwrap();
        assert!(vtv.sub(&Matrix::identity(5)).unwrap().max_abs() < 1e-10);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn residuals_at_moderate_order() {
        let a = random_symmetric(40, 3);
        let e = sym_eigen(&a);
        let norm = a.frobenius_norm();
        for j in 0..40 {
            let v = e.vector(j);
            let av = a.matmul(&Matrix::new(40, 1, v.clone()).unwrap()).unwrap();
            let r: f64 = av
                .as_slice()
                .iter()
                .zip(&v)
                .map(|(x, y)| (x - e.values[j] * y).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(r <= 1e-9 * norm, "residual {r} for eigenpair {j}");
        }
    }

    #[test]
    fn deterministic_bits() {
        let a = random_symmetric(12, 5);
        assert_eq!(sym_eigen(&a), sym_eigen(&a));
    }

    #[test]
    fn degenerate_and_empty() {
        let e = sym_eigen(&sym(Matrix::identity(3)));
        assert_eq!(e.values, vec![1.0; 3]);
        let e = sym_eigen(&sym(Matrix::zeros(0, 0)));
        assert!(e.values.is_empty());
    }
}
