use serde::Serialize;

use super::metrics::{auprc, auroc, class_counts, tie_blocks};
use crate::error::Result;
use crate::similarity::ScoredPair;

/// `(fpr, tpr)` from `(0, 0)` to `(1, 1)`, one point per distinct threshold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RocCurve {
    pub points: Vec<(f64, f64)>,
    pub auroc: f64,
}

/// `(recall, precision)`, starting at `(0, 1)`, one point per distinct
/// threshold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrCurve {
    pub points: Vec<(f64, f64)>,
    pub auprc: f64,
}

impl RocCurve {
    /// Trapezoidal area under `points`.
    pub fn trapezoid_area(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0)
            .sum()
    }
}

pub fn roc_points(scored: &[ScoredPair]) -> Result<RocCurve> {
    let auroc = auroc(scored)?;
    let (p, n) = class_counts(scored);
    let (p, n) = (p as f64, n as f64);
    let mut points = vec![(0.0, 0.0)];
    let (mut tp, mut fp) = (0usize, 0usize);
    for (_, bp, bn) in tie_blocks(scored) {
        tp += bp;
        fp += bn;
        points.push((fp as f64 / n, tp as f64 / p));
    }
    Ok(RocCurve { points, auroc })
}

pub fn pr_points(scored: &[ScoredPair]) -> Result<PrCurve> {
    let auprc = auprc(scored)?;
    let (p, _) = class_counts(scored);
    let mut points = vec![(0.0, 1.0)];
    let (mut tp, mut seen) = (0usize, 0usize);
    for (_, bp, bn) in tie_blocks(scored) {
        tp += bp;
        seen += bp + bn;
        points.push((tp as f64 / p as f64, tp as f64 / seen as f64));
    }
    Ok(PrCurve { points, auprc })
}
