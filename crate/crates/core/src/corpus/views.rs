use std::collections::HashMap;
use std::path::Path;

use super::{read_matrix, FeatureMatrix, QueryItemPair};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Dimensionality of the precomputed image vectors the pipeline expects by
/// default.
pub const DEFAULT_IMAGE_DIM: usize = 1024;

/// Image vectors keyed by image id (the matrix's row ids).
#[derive(Clone, Debug)]
pub struct ImageFeatureStore {
    matrix: FeatureMatrix,
    index: HashMap<String, usize>,
}

impl ImageFeatureStore {
    pub fn new(matrix: FeatureMatrix) -> Result<Self> {
        let index = match matrix.row_ids() {
            Some(ids) => ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect(),
            None => return Err(Error::RowIds("image store needs row ids".into())),
        };
        Ok(Self { matrix, index })
    }

    /// Like [`ImageFeatureStore::new`] but also checks the vector width.
    pub fn with_dim(matrix: FeatureMatrix, dim: usize) -> Result<Self> {
        if matrix.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "image store has {} columns, expected {dim}",
                matrix.cols()
            )));
        }
        Self::new(matrix)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::new(read_matrix(path)?)
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn len(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, image_id: &str) -> Option<&[f64]> {
        self.index.get(image_id).map(|&i| self.matrix.row(i))
    }
}

/// Row-aligned inputs for fitting and scoring: row `i` of every matrix
/// belongs to `pairs[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlignedViews {
    pub q: FeatureMatrix,
    pub v: FeatureMatrix,
    pub u: FeatureMatrix,
    pub labels: Vec<u8>,
}

pub fn assemble_views(
    pairs: &[QueryItemPair],
    images: &ImageFeatureStore,
    q: FeatureMatrix,
    v: FeatureMatrix,
) -> Result<AlignedViews> {
    if q.rows() != pairs.len() || v.rows() != pairs.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} pairs but query matrix has {} rows and title matrix {}",
            pairs.len(),
            q.rows(),
            v.rows()
        )));
    }
    let dim = images.dim();
    let mut data = Vec::with_capacity(pairs.len() * dim);
    for (row, p) in pairs.iter().enumerate() {
        let vec = images.get(&p.image_id).ok_or_else(|| Error::UnresolvedImage {
            id: p.image_id.clone(),
            row,
        })?;
        data.extend_from_slice(vec);
    }
    let u = FeatureMatrix::from_matrix(Matrix::new(pairs.len(), dim, data)?)?;
    Ok(AlignedViews {
        q,
        v,
        u,
        labels: pairs.iter().map(|p| p.label).collect(),
    })
}
