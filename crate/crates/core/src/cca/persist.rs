use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CcaConfig, CcaModel, ItemBlock};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::textfeat::HashSpec;

pub const MODEL_VERSION: u32 = 1;

/// On-disk JSON layout. Basis matrices are flattened row-major.
#[derive(Serialize, Deserialize)]
struct ModelFile {
    version: u32,
    m: usize,
    n: usize,
    k: usize,
    ridge: f64,
    min_correlation: f64,
    mean_q: Vec<f64>,
    mean_i: Vec<f64>,
    rho: Vec<f64>,
    w_q: Vec<f64>,
    w_i: Vec<f64>,
    hash_spec: Option<HashSpec>,
    #[serde(default)]
    item_blocks: Vec<ItemBlock>,
}

pub fn model_to_json(model: &CcaModel) -> Result<String> {
    let file = ModelFile {
        version: MODEL_VERSION,
        m: model.m(),
        n: model.n(),
        k: model.k(),
        ridge: model.config.ridge,
        min_correlation: model.config.min_correlation,
        mean_q: model.mean_q.clone(),
        mean_i: model.mean_i.clone(),
        rho: model.rho.clone(),
        w_q: model.w_q.as_slice().to_vec(),
        w_i: model.w_i.as_slice().to_vec(),
        hash_spec: model.hash_spec,
        item_blocks: model.item_blocks.clone(),
    };
    let mut s = serde_json::to_string_pretty(&file)?;
    s.push('\n');
    Ok(s)
}

pub fn model_from_json(text: &str) -> Result<CcaModel> {
    let f: ModelFile = serde_json::from_str(text)?;
    if f.version != MODEL_VERSION {
        return Err(Error::InvalidModel(format!("unsupported version {}", f.version)));
    }
    let check = |what: &str, got: usize, want: usize| {
        if got == want {
            Ok(())
        } else {
            Err(Error::InvalidModel(format!("{what} has {got} values, expected {want}")))
        }
    };
    check("mean_q", f.mean_q.len(), f.m)?;
    check("mean_i", f.mean_i.len(), f.n)?;
    check("rho", f.rho.len(), f.k)?;
    check("w_q", f.w_q.len(), f.m * f.k)?;
    check("w_i", f.w_i.len(), f.n * f.k)?;

    let model = CcaModel {
        mean_q: f.mean_q,
        mean_i: f.mean_i,
        w_q: Matrix::new(f.m, f.k, f.w_q)?,
        w_i: Matrix::new(f.n, f.k, f.w_i)?,
        rho: f.rho,
        config: CcaConfig {
            k: Some(f.k),
            ridge: f.ridge,
            min_correlation: f.min_correlation,
        },
        hash_spec: f.hash_spec,
        item_blocks: f.item_blocks,
    };
    model.validate()?;
    Ok(model)
}

pub fn save_model(model: &CcaModel, path: &Path) -> Result<()> {
    std::fs::write(path, model_to_json(model)?).map_err(|e| Error::io(path, e))
}

pub fn load_model(path: &Path) -> Result<CcaModel> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    model_from_json(&text)
}
