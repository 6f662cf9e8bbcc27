use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{tokenize, CategoryStats};
use crate::error::{Error, Result};

pub const DEFAULT_HASH_DIM: usize = 1000;
pub const HASH_ALGORITHM: &str = "fnv1a64-signed";

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

/// Signed feature hashing into `d` buckets.
///
/// A token lands at `fnv1a64(token) mod d` with sign `+1` when bit 63 of the
/// hash is clear and `-1` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HashSpecRepr", into = "HashSpecRepr")]
pub struct HashSpec {
    d: usize,
}

impl HashSpec {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidConfig(format!(
                "hash dimension must be at least 2, got {d}"
            )));
        }
        Ok(Self { d })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Bucket index and sign for one token.
    pub fn slot(&self, token: &str) -> (usize, f64) {
        let h = fnv1a64(token.as_bytes());
        let index = (h % self.d as u64) as usize;
        let sign = if h >> 63 == 0 { 1.0 } else { -1.0 };
        (index, sign)
    }
}

impl Default for HashSpec {
    fn default() -> Self {
        Self {
            d: DEFAULT_HASH_DIM,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct HashSpecRepr {
    d: usize,
    algorithm: String,
}

impl TryFrom<HashSpecRepr> for HashSpec {
    type Error = Error;

    fn try_from(r: HashSpecRepr) -> Result<Self> {
        if r.algorithm != HASH_ALGORITHM {
            return Err(Error::InvalidConfig(format!(
                "unsupported hash algorithm {:?}",
                r.algorithm
            )));
        }
        HashSpec::new(r.d)
    }
}

impl From<HashSpec> for HashSpecRepr {
    fn from(s: HashSpec) -> Self {
        Self {
            d: s.d,
            algorithm: HASH_ALGORITHM.to_string(),
        }
    }
}

/// Hashed TF-IDF vector of `text` against one category table: every distinct
/// token adds `sign * tf * idf` at its bucket, collisions sum.
pub fn hashed_tfidf(text: &str, stats: &CategoryStats, spec: &HashSpec) -> Vec<f64> {
    let mut tf: BTreeMap<String, u32> = BTreeMap::new();
    for t in tokenize(text) {
        *tf.entry(t).or_insert(0) += 1;
    }
    let mut v = vec![0.0; spec.dim()];
    for (token, count) in &tf {
        let (i, sign) = spec.slot(token);
        v[i] += sign * *count as f64 * stats.idf(token);
    }
    v
}
