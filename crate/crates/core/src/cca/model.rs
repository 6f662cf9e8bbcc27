use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::textfeat::HashSpec;

/// Fit parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CcaConfig {
    /// Canonical pairs to keep. `None` keeps `min(m, n)`, which is `m` for a
    /// query view narrower than the item view.
    pub k: Option<usize>,
    /// Ridge scale: each within-view covariance gets `ridge * trace / dim`
    /// added to its diagonal.
    pub ridge: f64,
    /// Trailing components with a correlation below this are dropped.
    pub min_correlation: f64,
}

pub const DEFAULT_RIDGE: f64 = 1e-6;

impl Default for CcaConfig {
    fn default() -> Self {
        Self {
            k: None,
            ridge: DEFAULT_RIDGE,
            min_correlation: 0.0,
        }
    }
}

impl CcaConfig {
    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_ridge(mut self, ridge: f64) -> Self {
        self.ridge = ridge;
        self
    }

    pub fn with_min_correlation(mut self, floor: f64) -> Self {
        self.min_correlation = floor;
        self
    }

    /// Checks the parameters against view widths and returns the resolved `k`.
    pub fn resolve(&self, m: usize, n: usize) -> Result<usize> {
        let r = m.min(n);
        let k = self.k.unwrap_or(r);
        if k < 1 || k > r {
            return Err(Error::InvalidConfig(format!(
                "k = {k} outside [1, min(m, n) = {r}]"
            )));
        }
        if !(self.ridge >= 0.0) || !self.ridge.is_finite() {
            return Err(Error::InvalidConfig(format!("ridge {} must be >= 0", self.ridge)));
        }
        if !(0.0..1.0).contains(&self.min_correlation) {
            return Err(Error::InvalidConfig(format!(
                "min_correlation {} outside [0, 1)",
                self.min_correlation
            )));
        }
        Ok(k)
    }
}

/// One named block of the item view's columns, in concatenation order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemBlock {
    pub name: String,
    pub cols: usize,
}

/// Fitted canonical bases.
///
/// `w_q` is `m x k` and `w_i` is `n x k`; column `j` of each is the `j`-th
/// canonical direction, with correlation `rho[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CcaModel {
    pub(crate) mean_q: Vec<f64>,
    pub(crate) mean_i: Vec<f64>,
    pub(crate) w_q: Matrix,
    pub(crate) w_i: Matrix,
    pub(crate) rho: Vec<f64>,
    pub(crate) config: CcaConfig,
    pub(crate) hash_spec: Option<HashSpec>,
    pub(crate) item_blocks: Vec<ItemBlock>,
}

pub(crate) const RHO_SLACK: f64 = 1e-9;

impl CcaModel {
    /// Assembles a model and checks its structural invariants: shapes agree,
    /// values are finite, and `rho` is descending within `[0, 1 + 1e-9]`.
    pub fn from_parts(
        mean_q: Vec<f64>,
        mean_i: Vec<f64>,
        w_q: Matrix,
        w_i: Matrix,
        rho: Vec<f64>,
        config: CcaConfig,
    ) -> Result<Self> {
        let model = Self {
            mean_q,
            mean_i,
            w_q,
            w_i,
            rho,
            config,
            hash_spec: None,
            item_blocks: Vec::new(),
        };
        model.validate()?;
        Ok(model)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        let (m, n, k) = (self.mean_q.len(), self.mean_i.len(), self.rho.len());
        if k == 0 {
            return bad("no canonical components".into());
        }
        if k > m.min(n) {
            return bad(format!("k = {k} exceeds min(m, n) = {}", m.min(n)));
        }
        if self.w_q.shape() != (m, k) {
            return bad(format!("w_q is {:?}, expected ({m}, {k})", self.w_q.shape()));
        }
        if self.w_i.shape() != (n, k) {
            return bad(format!("w_i is {:?}, expected ({n}, {k})", self.w_i.shape()));
        }
        let finite = |xs: &[f64]| xs.iter().all(|v| v.is_finite());
        if !finite(&self.mean_q) || !finite(&self.mean_i) || !self.w_q.is_finite() || !self.w_i.is_finite() {
            return bad("non-finite parameter".into());
        }
        if let Some(r) = self.rho.iter().find(|r| !(0.0..=1.0 + RHO_SLACK).contains(*r)) {
            return bad(format!("correlation {r} outside [0, 1]"));
        }
        if self.rho.windows(2).any(|w| w[0] < w[1]) {
            return bad("correlations are not descending".into());
        }
        let covered: usize = self.item_blocks.iter().map(|b| b.cols).sum();
        if !self.item_blocks.is_empty() && covered != n {
            return bad(format!("item blocks cover {covered} of {n} columns"));
        }
        self.config
            .resolve(m, n)
            .map_err(|e| Error::InvalidModel(e.to_string()))?;
        Ok(())
    }

    /// Records the hashing used to build the text views.
    pub fn with_hash_spec(mut self, spec: HashSpec) -> Self {
        self.hash_spec = Some(spec);
        self
    }

    /// Records how the item view's columns were concatenated.
    pub fn with_item_blocks(mut self, blocks: Vec<ItemBlock>) -> Result<Self> {
        self.item_blocks = blocks;
        self.validate()?;
        Ok(self)
    }

    pub fn m(&self) -> usize {
        self.mean_q.len()
    }

    pub fn n(&self) -> usize {
        self.mean_i.len()
    }

    pub fn k(&self) -> usize {
        self.rho.len()
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn w_q(&self) -> &Matrix {
        &self.w_q
    }

    pub fn w_i(&self) -> &Matrix {
        &self.w_i
    }

    pub fn mean_q(&self) -> &[f64] {
        &self.mean_q
    }

    pub fn mean_i(&self) -> &[f64] {
        &self.mean_i
    }

    pub fn config(&self) -> &CcaConfig {
        &self.config
    }

    pub fn hash_spec(&self) -> Option<&HashSpec> {
        self.hash_spec.as_ref()
    }

    pub fn item_blocks(&self) -> &[ItemBlock] {
        &self.item_blocks
    }
}
