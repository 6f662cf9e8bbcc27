use super::{Matrix, SymmetricMatrix};
use crate::error::{Error, Result};

/// Lower-triangular `L` with `A = L L^T`.
///
/// Fails with [`Error::NotPositiveDefinite`] at the first pivot that is not
/// strictly positive (or not finite).
pub fn cholesky(a: &SymmetricMatrix) -> Result<Matrix> {
    let n = a.order();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = a.get(j, j);
        for k in 0..j {
            let v = l.get(j, k);
            d -= v * v;
        }
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::NotPositiveDefinite { pivot: j });
        }
        let ljj = d.sqrt();
        l.set(j, j, ljj);
        for i in (j + 1)..n {
            let mut s = a.get(i, j);
            let (ri, rj) = (l.row(i), l.row(j));
            for k in 0..j {
                s -= ri[k] * rj[k];
            }
            l.set(i, j, s / ljj);
        }
    }
    Ok(l)
}

/// Solves `L X = B` by forward substitution for lower-triangular `L`.
pub fn solve_lower(l: &Matrix, b: &Matrix) -> Result<Matrix> {
    check_triangular_rhs(l, b)?;
    let n = l.rows();
    let mut x = b.clone();
    for i in 0..n {
        for k in 0..i {
            let lik = l.get(i, k);
            if lik == 0.0 {
                continue;
            }
            let (head, tail) = x.as_mut_slice().split_at_mut(i * b.cols());
            let xk = &head[k * b.cols()..(k + 1) * b.cols()];
            for (xi, &v) in tail[..b.cols()].iter_mut().zip(xk) {
                *xi -= lik * v;
            }
        }
        let d = l.get(i, i);
        for v in x.row_mut(i) {
            *v /= d;
        }
    }
    Ok(x)
}

/// Solves `L^T X = B` by back substitution for lower-triangular `L`.
pub fn solve_lower_transpose(l: &Matrix, b: &Matrix) -> Result<Matrix> {
    check_triangular_rhs(l, b)?;
    let n = l.rows();
    let c = b.cols();
    let mut x = b.clone();
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            // (L^T)[i,k] = L[k,i]
            let lki = l.get(k, i);
            if lki == 0.0 {
                continue;
            }
            let (head, tail) = x.as_mut_slice().split_at_mut(k * c);
            let xk = &tail[..c];
            for (xi, &v) in head[i * c..(i + 1) * c].iter_mut().zip(xk) {
                *xi -= lki * v;
            }
        }
        let d = l.get(i, i);
        for v in x.row_mut(i) {
            *v /= d;
        }
    }
    Ok(x)
}

fn check_triangular_rhs(l: &Matrix, b: &Matrix) -> Result<()> {
    if l.rows() != l.cols() || l.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "triangular system {}x{} with right-hand side {}x{}",
            l.rows(),
            l.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}
