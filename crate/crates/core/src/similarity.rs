//! Per-pair cosine relevance scores.
//!
//! The baseline compares raw hashed query and title vectors. The projected
//! score compares a query and its item after both pass through a fitted CCA
//! model.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cca::{project_item, project_query, CcaModel};
use crate::error::{Error, Result};
use crate::linalg::{dot, norm, Matrix};

/// Norms below this make a vector count as zero.
pub const ZERO_NORM: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoredPair {
    pub row_index: usize,
    pub score: f64,
    pub label: u8,
}

impl ScoredPair {
    pub fn is_positive(&self) -> bool {
        self.label == 1
    }
}

/// `a . b / (|a| |b|)`, or 0 when either vector is numerically zero.
pub fn cosine(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "cosine of vectors with lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(cosine_unchecked(a, b))
}

fn cosine_unchecked(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (norm(a), norm(b));
    if na < ZERO_NORM || nb < ZERO_NORM {
        return 0.0;
    }
    (dot(a, b) / (na * nb)).clamp(-1.0, 1.0)
}

fn row_cosines(a: &Matrix, b: &Matrix, labels: &[u8]) -> Result<Vec<ScoredPair>> {
    if a.rows() != b.rows() || a.rows() != labels.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} and {} rows scored against {} labels",
            a.rows(),
            b.rows(),
            labels.len()
        )));
    }
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "cosine between {}-column and {}-column views",
            a.cols(),
            b.cols()
        )));
    }
    Ok((0..a.rows())
        .into_par_iter()
        .map(|r| ScoredPair {
            row_index: r,
            score: cosine_unchecked(a.row(r), b.row(r)),
            label: labels[r],
        })
        .collect())
}

/// Cosine between each query row and the matching title row.
pub fn score_baseline(q: &Matrix, v: &Matrix, labels: &[u8]) -> Result<Vec<ScoredPair>> {
    row_cosines(q, v, labels)
}

/// Cosine between each projected query row and the matching projected item row.
pub fn score_cca(model: &CcaModel, q: &Matrix, i: &Matrix, labels: &[u8]) -> Result<Vec<ScoredPair>> {
    let pq = project_query(model, q)?;
    let pi = project_item(model, i)?;
    row_cosines(&pq, &pi, labels)
}

pub fn write_scores(path: &Path, scores: &[ScoredPair]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_io(path, e))?;
    for s in scores {
        w.serialize(s)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_scores(path: &Path) -> Result<Vec<ScoredPair>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_io(path, e))?;
    let headers = r.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["row_index", "score", "label"] {
        return Err(Error::InvalidScore {
            row: 0,
            reason: format!("header must be row_index,score,label, found {}", headers.iter().collect::<Vec<_>>().join(",")),
        });
    }
    let mut out = Vec::new();
    for (n, rec) in r.deserialize::<ScoredPair>().enumerate() {
        let s = rec?;
        if !s.score.is_finite() || s.score.abs() > 1.0 + ZERO_NORM {
            return Err(Error::InvalidScore {
                row: n + 1,
                reason: format!("score {} outside [-1, 1]", s.score),
            });
        }
        if s.label > 1 {
            return Err(Error::InvalidScore {
                row: n + 1,
                reason: format!("label {} is not 0 or 1", s.label),
            });
        }
        out.push(s);
    }
    Ok(out)
}

fn csv_io(path: &Path, e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            _ => unreachable!(),
        }
    } else {
        Error::Csv(e)
    }
}
