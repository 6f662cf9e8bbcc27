//! Ranking metrics over scored pairs.
//!
//! Ties are handled as blocks everywhere: average ranks for AUROC, whole-block
//! inclusion for precision, and one curve point per distinct score. All
//! results are therefore independent of the input order of equal scores.

mod curves;
mod metrics;
mod report;

pub use curves::{pr_points, roc_points, PrCurve, RocCurve};
pub use metrics::{auprc, auroc, relative_gain};
pub use report::{
    compare, evaluate, write_comparison, write_metrics, write_pr_csv, write_roc_csv, Comparison, EvalReport,
};
