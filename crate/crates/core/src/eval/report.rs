use std::path::Path;

use serde::Serialize;

use super::curves::{PrCurve, RocCurve};
use super::metrics::{auprc, auroc, class_counts, relative_gain};
use crate::error::{Error, Result};
use crate::similarity::ScoredPair;

/// Scalar metrics for one score list. Serializes as the metrics file.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub auroc: f64,
    pub auprc: f64,
    pub positives: usize,
    pub negatives: usize,
    pub n: usize,
}

pub fn evaluate(scored: &[ScoredPair]) -> Result<EvalReport> {
    let (positives, negatives) = class_counts(scored);
    Ok(EvalReport {
        auroc: auroc(scored)?,
        auprc: auprc(scored)?,
        positives,
        negatives,
        n: scored.len(),
    })
}

/// Baseline against proposed; gains are percentages relative to the
/// baseline and `None` when the baseline metric is 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub baseline: EvalReport,
    pub proposed: EvalReport,
    pub auroc_gain_pct: Option<f64>,
    pub auprc_gain_pct: Option<f64>,
}

impl Comparison {
    pub fn summary(&self) -> String {
        let pct = |g: Option<f64>| g.map_or("n/a".to_string(), |g| format!("{g:+.2}%"));
        format!(
            "AUROC {:.4} -> {:.4} ({}), AUPRC {:.4} -> {:.4} ({})",
            self.baseline.auroc,
            self.proposed.auroc,
            pct(self.auroc_gain_pct),
            self.baseline.auprc,
            self.proposed.auprc,
            pct(self.auprc_gain_pct)
        )
    }
}

/// Both score lists must carry the same labels in the same row order.
pub fn compare(baseline: &[ScoredPair], proposed: &[ScoredPair]) -> Result<Comparison> {
    if baseline.len() != proposed.len() {
        return Err(Error::DimensionMismatch(format!(
            "baseline has {} scores, proposed has {}",
            baseline.len(),
            proposed.len()
        )));
    }
    if let Some(row) = baseline
        .iter()
        .zip(proposed)
        .position(|(a, b)| a.label != b.label || a.row_index != b.row_index)
    {
        return Err(Error::LabelMismatch(row));
    }
    let (b, p) = (evaluate(baseline)?, evaluate(proposed)?);
    Ok(Comparison {
        baseline: b,
        proposed: p,
        auroc_gain_pct: relative_gain(b.auroc, p.auroc),
        auprc_gain_pct: relative_gain(b.auprc, p.auprc),
    })
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    std::fs::write(path, s).map_err(|e| Error::io(path, e))
}

pub fn write_metrics(report: &EvalReport, path: &Path) -> Result<()> {
    write_json(report, path)
}

pub fn write_comparison(cmp: &Comparison, path: &Path) -> Result<()> {
    write_json(cmp, path)
}

fn write_points(points: &[(f64, f64)], header: [&str; 2], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for (x, y) in points {
        w.write_record([x.to_string(), y.to_string()])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::io(path, e.into_error()))?;
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

pub fn write_roc_csv(curve: &RocCurve, path: &Path) -> Result<()> {
    write_points(&curve.points, ["fpr", "tpr"], path)
}

pub fn write_pr_csv(curve: &PrCurve, path: &Path) -> Result<()> {
    write_points(&curve.points, ["recall", "precision"], path)
}
