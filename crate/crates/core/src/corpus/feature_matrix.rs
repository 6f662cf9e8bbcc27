use std::collections::{HashMap, HashSet};
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Finite-valued dense matrix with optional unique string ids per row.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMatrix {
    values: Matrix,
    row_ids: Option<Vec<String>>,
}

impl FeatureMatrix {
    pub fn new(values: Matrix, row_ids: Option<Vec<String>>) -> Result<Self> {
        if let Some((row, col)) = values.first_non_finite() {
            return Err(Error::NonFinite { row, col });
        }
        if let Some(ids) = &row_ids {
            if ids.len() != values.rows() {
                return Err(Error::RowIds(format!(
                    "{} ids for {} rows",
                    ids.len(),
                    values.rows()
                )));
            }
            let mut seen = HashSet::with_capacity(ids.len());
            if let Some(dup) = ids.iter().find(|id| !seen.insert(id.as_str())) {
                return Err(Error::RowIds(format!("duplicate id {dup:?}")));
            }
        }
        Ok(Self { values, row_ids })
    }

    pub fn from_matrix(values: Matrix) -> Result<Self> {
        Self::new(values, None)
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn into_matrix(self) -> Matrix {
        self.values
    }

    pub fn row_ids(&self) -> Option<&[String]> {
        self.row_ids.as_deref()
    }

    /// Map from row id to row index. Empty when the matrix has no ids.
    pub fn id_index(&self) -> HashMap<&str, usize> {
        self.row_ids
            .iter()
            .flatten()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect()
    }
}

impl Deref for FeatureMatrix {
    type Target = Matrix;

    fn deref(&self) -> &Matrix {
        &self.values
    }
}
