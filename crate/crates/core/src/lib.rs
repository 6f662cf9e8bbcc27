//! Cross-modal relevance scoring for query-item pairs.
//!
//! Queries only carry text, items carry a title and an image. This crate
//! learns a shared subspace between the query view and the concatenated
//! item view with canonical correlation analysis, scores pairs by cosine
//! similarity inside that subspace, and evaluates the result against a
//! text-only cosine baseline with ROC and precision-recall metrics.
//!
//! Pipeline, end to end:
//!
//! 1. [`corpus`] loads labeled pairs (JSONL) and precomputed image vectors,
//!    and owns the `CMXF` binary matrix format.
//! 2. [`textfeat`] turns query and title text into hashed TF-IDF vectors
//!    using per-category document statistics.
//! 3. [`cca`] fits the canonical bases on `Q` and `I = [U | V]`, built on the
//!    dense kernels in [`linalg`].
//! 4. [`similarity`] produces the baseline and projected cosine scores.
//! 5. [`eval`] computes ROC/PR curves, AUROC, and AUPRC.
//!
//! [`synthdata`] provides seeded generators with known structure for
//! validating the above without proprietary data.

pub mod cca;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod linalg;
pub mod similarity;
pub mod synthdata;
pub mod textfeat;

pub use error::{Error, Result};
