use serde::Serialize;

use super::fit::{regularize, training_blocks};
use super::CcaModel;
use crate::error::Result;
use crate::linalg::{norm, Matrix, SymmetricMatrix};

/// Pass threshold applied to every regularized-form deviation.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-6;

/// Largest violation of each defining property of the canonical bases.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConstraintDeviations {
    /// `max |W_Q^T C_QQ W_Q - I|`: projected queries are white.
    pub query_whitening: f64,
    /// `max |W_I^T C_II W_I - I|`: projected items are white.
    pub item_whitening: f64,
    /// Largest off-diagonal `|W_Q^T C_QI W_I|`: distinct canonical pairs are
    /// uncorrelated across views.
    pub cross_decorrelation: f64,
    /// `max_j |(W_Q^T C_QI W_I)_jj - rho_j|`.
    pub correlation_diagonal: f64,
    /// `max_j |C_QI w_I - rho lambda_Q C_QQ w_Q| / |C_QQ w_Q|`.
    pub query_relation: f64,
    /// `max_j |C_IQ w_Q - rho lambda_I C_II w_I| / |C_II w_I|`, `lambda_I = 1/lambda_Q`.
    pub item_relation: f64,
}

impl ConstraintDeviations {
    pub fn max(&self) -> f64 {
        [
            self.query_whitening,
            self.item_whitening,
            self.cross_decorrelation,
            self.correlation_diagonal,
            self.query_relation,
            self.item_relation,
        ]
        .into_iter()
        .fold(0.0, worse)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstraintReport {
    /// Deviations against the ridge-regularized within-view covariances the
    /// model was fit with. These decide `passed`.
    pub regularized: ConstraintDeviations,
    /// The same checks against the raw covariances. Equal to `regularized`
    /// when the ridge is zero.
    pub unregularized: ConstraintDeviations,
    /// `sqrt(w_I^T C_II w_I / w_Q^T C_QQ w_Q)` per component, raw covariances.
    pub lambda_q: Vec<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

/// Recomputes the covariance blocks of the training views and checks the
/// model's bases against them.
pub fn verify_constraints(model: &CcaModel, q: &Matrix, i: &Matrix) -> Result<ConstraintReport> {
    let (_, _, blocks) = training_blocks(q, i)?;
    let reg = regularize(&blocks, model.config.ridge);
    let regularized = deviations(model, &reg.c_qq, &reg.c_ii, &blocks.c_qi)?.0;
    let (unregularized, lambda_q) = deviations(model, &blocks.c_qq, &blocks.c_ii, &blocks.c_qi)?;
    Ok(ConstraintReport {
        passed: regularized.max() <= CONSTRAINT_TOLERANCE,
        regularized,
        unregularized,
        lambda_q,
        tolerance: CONSTRAINT_TOLERANCE,
    })
}

fn deviations(
    model: &CcaModel,
    c_qq: &SymmetricMatrix,
    c_ii: &SymmetricMatrix,
    c_qi: &Matrix,
) -> Result<(ConstraintDeviations, Vec<f64>)> {
    let (w_q, w_i, rho) = (&model.w_q, &model.w_i, &model.rho);
    let k = rho.len();

    let cq_wq = c_qq.matmul(w_q)?; // m x k
    let ci_wi = c_ii.matmul(w_i)?; // n x k
    let cqi_wi = c_qi.matmul(w_i)?; // m x k
    let ciq_wq = c_qi.t_matmul(w_q)?; // n x k

    let qq = w_q.t_matmul(&cq_wq)?;
    let ii = w_i.t_matmul(&ci_wi)?;
    let qi = w_q.t_matmul(&cqi_wi)?;

    let mut dev = ConstraintDeviations {
        query_whitening: identity_deviation(&qq),
        item_whitening: identity_deviation(&ii),
        cross_decorrelation: 0.0,
        correlation_diagonal: 0.0,
        query_relation: 0.0,
        item_relation: 0.0,
    };
    for a in 0..k {
        for b in 0..k {
            if a != b {
                dev.cross_decorrelation = worse(dev.cross_decorrelation, qi.get(a, b).abs());
            }
        }
        dev.correlation_diagonal =
            worse(dev.correlation_diagonal, (qi.get(a, a) - rho[a]).abs());
    }

    let mut lambda_q = Vec::with_capacity(k);
    for j in 0..k {
        let lq = (ii.get(j, j) / qq.get(j, j)).sqrt();
        let li = 1.0 / lq;
        lambda_q.push(lq);

        let lhs = cqi_wi.col(j);
        let rhs = cq_wq.col(j);
        let r: Vec<f64> = lhs.iter().zip(&rhs).map(|(a, b)| a - rho[j] * lq * b).collect();
        dev.query_relation = worse(dev.query_relation, relative(&r, &rhs));

        let lhs = ciq_wq.col(j);
        let rhs = ci_wi.col(j);
        let r: Vec<f64> = lhs.iter().zip(&rhs).map(|(a, b)| a - rho[j] * li * b).collect();
        dev.item_relation = worse(dev.item_relation, relative(&r, &rhs));
    }
    Ok((dev, lambda_q))
}

/// Running maximum that treats NaN as an unbounded violation.
fn worse(acc: f64, v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        acc.max(v)
    }
}

fn relative(residual: &[f64], scale: &[f64]) -> f64 {
    let s = norm(scale);
    if s > 0.0 {
        norm(residual) / s
    } else {
        norm(residual)
    }
}

fn identity_deviation(m: &Matrix) -> f64 {
    let mut worst = 0.0f64;
    for a in 0..m.rows() {
        for b in 0..m.cols() {
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worse(worst, (m.get(a, b) - target).abs());
        }
    }
    worst
}
