use super::eigen::{flip_column, orient_column, sym_eigen};
use super::{Matrix, SymmetricMatrix};

/// Thin SVD `A = U diag(s) V^T` with `r = min(p, q)` columns in `u` and `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Svd {
    pub u: Matrix,
    pub singular_values: Vec<f64>,
    pub v: Matrix,
}

/// Thin SVD through the eigendecomposition of the Gram matrix of the smaller
/// side. The other side's vectors are `A^T u_j` (or `A v_j`) normalized and
/// re-orthogonalized; columns for vanishing singular values are completed to
/// an orthonormal set.
///
/// Each left vector has its largest-magnitude entry positive, and the
/// matching right vector is flipped with it.
pub fn thin_svd(a: &Matrix) -> Svd {
    let (p, q) = a.shape();
    let mut svd = if p <= q {
        let (u, s, v) = gram_side(a);
        Svd {
            u,
            singular_values: s,
            v,
        }
    } else {
        let (v, s, u) = gram_side(&a.transpose());
        Svd {
            u,
            singular_values: s,
            v,
        }
    };
    for j in 0..svd.singular_values.len() {
        if orient_column(&mut svd.u, j) {
            flip_column(&mut svd.v, j);
        }
    }
    svd
}

/// For `a` with `p <= q`: eigenvectors of `a a^T` (p x p), singular values,
/// and the derived q x p right vectors.
fn gram_side(a: &Matrix) -> (Matrix, Vec<f64>, Matrix) {
    let (p, q) = a.shape();
    let gram = a.matmul(&a.transpose()).expect("conformable");
    let gram = SymmetricMatrix::symmetrize(&gram).expect("square");
    let eig = sym_eigen(&gram);
    let s: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let s_max = s.first().copied().unwrap_or(0.0);

    let at = a.transpose();
    let projected = at.matmul(&eig.vectors).expect("conformable");
    let mut v = Matrix::zeros(q, p);
    let mut done: Vec<Vec<f64>> = Vec::with_capacity(p);
    for j in 0..p {
        let mut w = projected.col(j);
        orthogonalize(&mut w, &done);
        orthogonalize(&mut w, &done);
        let nrm = super::norm(&w);
        let w = if s_max > 0.0 && nrm > 1e-12 * s_max {
            w.into_iter().map(|x| x / nrm).collect()
        } else {
            complete(&done, q)
        };
        for (i, x) in w.iter().enumerate() {
            v.set(i, j, *x);
        }
        done.push(w);
    }
    (eig.vectors, s, v)
}

fn orthogonalize(w: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let d = super::dot(w, b);
        for (x, y) in w.iter_mut().zip(b) {
            *x -= d * y;
        }
    }
}

/// A unit vector orthogonal to `basis`, from the first coordinate axis that
/// keeps a substantial residual.
fn complete(basis: &[Vec<f64>], q: usize) -> Vec<f64> {
    let mut best: Option<(f64, Vec<f64>)> = None;
    for i in 0..q {
        let mut e = vec![0.0; q];
        e[i] = 1.0;
        orthogonalize(&mut e, basis);
        orthogonalize(&mut e, basis);
        let nrm = super::norm(&e);
        if nrm > 0.5 {
            return e.into_iter().map(|x| x / nrm).collect();
        }
        if best.as_ref().is_none_or(|(b, _)| nrm > *b) {
            best = Some((nrm, e));
        }
    }
    let (nrm, e) = best.expect("q > 0");
    e.into_iter().map(|x| x / nrm).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthdata::rng::Stream;

    fn random(p: usize, q: usize, seed: u64) -> Matrix {
        let mut s = Stream::new(seed, "svd-test");
        Matrix::from_fn(p, q, |_, _| s.normal())
    }

    fn reconstruct(svd: &Svd) -> Matrix {
        let r = svd.singular_values.len();
        let sigma = Matrix::from_fn(r, r, |i, j| {
            if i == j {
                svd.singular_values[i]
            } else {
                0.0
            }
        });
        svd.u
            .matmul(&sigma)
            .unwrap()
            .matmul(&svd.v.transpose())
            .unwrap()
    }

    fn assert_orthonormal_cols(m: &Matrix) {
        let g = m.t_matmul(m).unwrap();
        let err = g.sub(&Matrix::identity(m.cols())).unwrap().max_abs();
        assert!(err < 1e-10, "orthonormality error {err}");
    }

    #[test]
    fn identity_has_unit_singular_values() {
        let svd = thin_svd(&Matrix::identity(3));
        for s in &svd.singular_values {
            assert!((s - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn rank_one_outer_product() {
        // ||u|| = 2, ||v|| = 3
        let u = [2.0, 0.0, 0.0];
        let v = [0.0, 3.0 * 0.6, 3.0 * 0.8, 0.0];
        let a = Matrix::from_fn(3, 4, |i, j| u[i] * v[j]);
        let svd = thin_svd(&a);
        assert!((svd.singular_values[0] - 6.0).abs() < 1e-12);
        for s in &svd.singular_values[1..] {
            assert!(s.abs() < 1e-7);
        }
        assert_orthonormal_cols(&svd.u);
        assert_orthonormal_cols(&svd.v);
        assert!(reconstruct(&svd).sub(&a).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn wide_and_tall_reconstruct() {
        for &(p, q) in &[(6, 4), (4, 6), (5, 5), (1, 3), (3, 1)] {
            let a = random(p, q, (p * 10 + q) as u64);
            let svd = thin_svd(&a);
            let err = reconstruct(&svd).sub(&a).unwrap().frobenius_norm();
            assert!(err <= 1e-9 * a.frobenius_norm(), "{p}x{q}: {err}");
            assert_orthonormal_cols(&svd.u);
            assert_orthonormal_cols(&svd.v);
            assert!(svd.singular_values.windows(2).all(|w| w[0] >= w[1]));
            assert!(svd.singular_values.iter().all(|s| *s >= 0.0));
        }
    }

    #[test]
    fn rank_deficient_gets_complete_right_basis() {
        let a = Matrix::zeros(3, 5);
        let svd = thin_svd(&a);
        assert_eq!(svd.singular_values, vec![0.0; 3]);
        assert_orthonormal_cols(&svd.v);
    }

    #[test]
    fn left_vectors_follow_sign_convention() {
        let a = random(4, 7, 99);
        let svd = thin_svd(&a);
        for j in 0..4 {
            let col = svd.u.col(j);
            let big = col.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
            assert!(big > 0.0);
        }
    }
}
