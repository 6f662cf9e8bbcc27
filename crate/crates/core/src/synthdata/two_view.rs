use serde::{Deserialize, Serialize};

use super::rng::Stream;
use crate::corpus::FeatureMatrix;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Two Gaussian views whose population canonical correlations are exactly
/// `correlations`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoViewSpec {
    pub t: usize,
    pub p: usize,
    pub q: usize,
    pub correlations: Vec<f64>,
    pub seed: u64,
}

impl TwoViewSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.t == 0 || self.p == 0 || self.q == 0 {
            return bad(format!("t, p, q must be >= 1, got {}, {}, {}", self.t, self.p, self.q));
        }
        if self.correlations.len() > self.p.min(self.q) {
            return bad(format!(
                "{} correlations exceed min(p, q) = {}",
                self.correlations.len(),
                self.p.min(self.q)
            ));
        }
        if let Some(r) = self.correlations.iter().find(|r| !(0.0..1.0).contains(*r)) {
            return bad(format!("correlation {r} outside [0, 1)"));
        }
        if self.correlations.windows(2).any(|w| w[0] < w[1]) {
            return bad("correlations must be non-increasing".into());
        }
        Ok(())
    }
}

/// Column `j < r` of `X` is `rho_j u_j + sqrt(1 - rho_j^2) e_j` and of `Y` is
/// `u_j`, with `u`, `e` and all remaining columns independent standard
/// normals.
pub fn gen_two_view(spec: &TwoViewSpec) -> Result<(FeatureMatrix, FeatureMatrix)> {
    spec.validate()?;
    let r = spec.correlations.len();
    let mut shared = Stream::new(spec.seed, "two-view/shared");
    let mut x_noise = Stream::new(spec.seed, "two-view/x-noise");
    let mut y_noise = Stream::new(spec.seed, "two-view/y-noise");

    let mut x = Matrix::zeros(spec.t, spec.p);
    let mut y = Matrix::zeros(spec.t, spec.q);
    for row in 0..spec.t {
        let u: Vec<f64> = (0..r).map(|_| shared.normal()).collect();
        for (j, v) in x.row_mut(row).iter_mut().enumerate() {
            let e = x_noise.normal();
            *v = match spec.correlations.get(j) {
                Some(rho) => rho * u[j] + (1.0 - rho * rho).sqrt() * e,
                None => e,
            };
        }
        for (j, v) in y.row_mut(row).iter_mut().enumerate() {
            *v = if j < r { u[j] } else { y_noise.normal() };
        }
    }
    Ok((FeatureMatrix::from_matrix(x)?, FeatureMatrix::from_matrix(y)?))
}
