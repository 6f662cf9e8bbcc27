use super::{CcaConfig, CcaModel};
use crate::error::{Error, Result};
use crate::linalg::{
    center_columns, cholesky, covariance_blocks, dominant_index, flip_column, solve_lower,
    solve_lower_transpose, thin_svd, CovarianceBlocks, Matrix, SymmetricMatrix,
};

/// Within-view covariances with the scaled ridge applied.
pub(crate) struct Regularized {
    pub c_qq: SymmetricMatrix,
    pub c_ii: SymmetricMatrix,
}

pub(crate) fn regularize(blocks: &CovarianceBlocks, ridge: f64) -> Regularized {
    let shift = |c: &SymmetricMatrix| {
        let scale = ridge * c.trace() / c.order().max(1) as f64;
        if scale == 0.0 {
            c.clone()
        } else {
            c.with_diagonal_shift(scale)
        }
    };
    Regularized {
        c_qq: shift(&blocks.c_qq),
        c_ii: shift(&blocks.c_ii),
    }
}

/// Centered views and their covariance blocks for a training pair.
pub(crate) fn training_blocks(q: &Matrix, i: &Matrix) -> Result<(Vec<f64>, Vec<f64>, CovarianceBlocks)> {
    if q.rows() != i.rows() {
        return Err(Error::DimensionMismatch(format!(
            "query view has {} rows, item view has {}",
            q.rows(),
            i.rows()
        )));
    }
    if q.rows() < 2 {
        return Err(Error::TooFewRows {
            needed: 2,
            got: q.rows(),
        });
    }
    for m in [q, i] {
        if let Some((row, col)) = m.first_non_finite() {
            return Err(Error::NonFinite { row, col });
        }
    }
    let (qc, mean_q) = center_columns(q)?;
    let (ic, mean_i) = center_columns(i)?;
    let blocks = covariance_blocks(&qc, &ic)?;
    Ok((mean_q, mean_i, blocks))
}

/// Fits canonical bases between the query view `q` (t x m) and the item view
/// `i` (t x n).
///
/// Both views are centered, their within-view covariances regularized and
/// Cholesky-factored (`C~ = L L^T`), and the whitened cross-covariance
/// `T = L_Q^{-1} C_QI L_I^{-T}` decomposed by SVD `T = A S B^T`. The bases are
/// `w_q = L_Q^{-T} A` and `w_i = L_I^{-T} B`, truncated to `k` columns, with
/// canonical correlations `S`. This solves the same generalized eigenproblem
/// as `C_QQ^{-1} C_QI C_II^{-1} C_IQ w = rho^2 w` through symmetric steps only.
pub fn fit(q: &Matrix, i: &Matrix, config: CcaConfig) -> Result<CcaModel> {
    let (m, n) = (q.cols(), i.cols());
    let k = config.resolve(m, n)?;
    let (mean_q, mean_i, blocks) = training_blocks(q, i)?;
    let reg = regularize(&blocks, config.ridge);

    let l_q = cholesky(&reg.c_qq).map_err(|e| ill_conditioned(e, "query"))?;
    let l_i = cholesky(&reg.c_ii).map_err(|e| ill_conditioned(e, "item"))?;

    let x = solve_lower(&l_q, &blocks.c_qi)?;
    let t = solve_lower(&l_i, &x.transpose())?.transpose();
    let svd = thin_svd(&t);

    let mut kept = k;
    while kept > 1 && svd.singular_values[kept - 1] < config.min_correlation {
        kept -= 1;
    }
    if svd.singular_values[0] < config.min_correlation {
        return Err(Error::InvalidConfig(format!(
            "largest canonical correlation {} is below min_correlation {}",
            svd.singular_values[0], config.min_correlation
        )));
    }

    let mut w_q = solve_lower_transpose(&l_q, &svd.u.leading_cols(kept))?;
    let mut w_i = solve_lower_transpose(&l_i, &svd.v.leading_cols(kept))?;
    for j in 0..kept {
        let d = dominant_index(&w_q, j);
        if w_q.get(d, j) < 0.0 {
            flip_column(&mut w_q, j);
            flip_column(&mut w_i, j);
        }
    }
    let rho = svd.singular_values[..kept].to_vec();

    CcaModel::from_parts(
        mean_q,
        mean_i,
        w_q,
        w_i,
        rho,
        CcaConfig {
            k: Some(kept),
            ..config
        },
    )
}

fn ill_conditioned(e: Error, view: &'static str) -> Error {
    match e {
        Error::NotPositiveDefinite { pivot } => Error::IllConditioned { view, pivot },
        other => other,
    }
}

fn project(x: &Matrix, mean: &[f64], w: &Matrix, view: &str) -> Result<Matrix> {
    if x.cols() != mean.len() {
        return Err(Error::DimensionMismatch(format!(
            "{view} view has {} columns, model expects {}",
            x.cols(),
            mean.len()
        )));
    }
    let mut centered = x.clone();
    for r in 0..centered.rows() {
        for (v, mu) in centered.row_mut(r).iter_mut().zip(mean) {
            *v -= mu;
        }
    }
    centered.matmul(w)
}

/// `(q - mean_q) * w_q`, one k-dimensional row per input row.
pub fn project_query(model: &CcaModel, q: &Matrix) -> Result<Matrix> {
    project(q, &model.mean_q, &model.w_q, "query")
}

/// `(i - mean_i) * w_i`, one k-dimensional row per input row.
pub fn project_item(model: &CcaModel, i: &Matrix) -> Result<Matrix> {
    project(i, &model.mean_i, &model.w_i, "item")
}
