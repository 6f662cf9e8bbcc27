use super::{Matrix, SymmetricMatrix};
use crate::error::{Error, Result};

/// Second-moment blocks of two centered views sharing the same rows.
///
/// `C_IQ` is not stored; it is the transpose of `c_qi`.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceBlocks {
    pub c_qq: SymmetricMatrix,
    pub c_ii: SymmetricMatrix,
    pub c_qi: Matrix,
}

impl CovarianceBlocks {
    pub fn c_iq(&self) -> Matrix {
        self.c_qi.transpose()
    }
}

/// Subtracts each column's mean. Returns the centered matrix and the means.
pub fn center_columns(m: &Matrix) -> Result<(Matrix, Vec<f64>)> {
    if m.rows() == 0 {
        return Err(Error::TooFewRows { needed: 1, got: 0 });
    }
    let mut means = vec![0.0; m.cols()];
    for row in m.row_iter() {
        for (s, v) in means.iter_mut().zip(row) {
            *s += v;
        }
    }
    let t = m.rows() as f64;
    for s in &mut means {
        *s /= t;
    }
    let mut out = m.clone();
    for i in 0..out.rows() {
        for (v, mu) in out.row_mut(i).iter_mut().zip(&means) {
            *v -= mu;
        }
    }
    Ok((out, means))
}

/// Covariance blocks with the unbiased `1/(t-1)` normalization.
pub fn covariance_blocks(q_centered: &Matrix, i_centered: &Matrix) -> Result<CovarianceBlocks> {
    if q_centered.rows() != i_centered.rows() {
        return Err(Error::DimensionMismatch(format!(
            "query view has {} rows, item view has {}",
            q_centered.rows(),
            i_centered.rows()
        )));
    }
    let t = q_centered.rows();
    if t < 2 {
        return Err(Error::TooFewRows { needed: 2, got: t });
    }
    let scale = 1.0 / (t as f64 - 1.0);
    let c_qq = gram(q_centered, scale)?;
    let c_ii = gram(i_centered, scale)?;
    let c_qi = q_centered.t_matmul(i_centered)?.scaled(scale);
    Ok(CovarianceBlocks { c_qq, c_ii, c_qi })
}

fn gram(x: &Matrix, scale: f64) -> Result<SymmetricMatrix> {
    // exactly symmetric: (i,j) and (j,i) sum the same products in the same order
    SymmetricMatrix::new(x.t_matmul(x)?.scaled(scale))
}
