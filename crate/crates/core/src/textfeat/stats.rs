use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::tokenize;
use crate::error::{Error, Result};

/// Document frequencies over the item titles of one listing category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryStats {
    pub category: String,
    pub doc_count: u64,
    pub df: BTreeMap<String, u64>,
}

impl CategoryStats {
    pub fn validate(&self) -> Result<()> {
        if self.doc_count == 0 {
            return Err(Error::InvalidConfig(format!(
                "category {:?} has doc_count 0",
                self.category
            )));
        }
        if let Some((t, &c)) = self
            .df
            .iter()
            .find(|(_, &c)| c == 0 || c > self.doc_count)
        {
            return Err(Error::InvalidConfig(format!(
                "category {:?}: df[{t:?}] = {c} outside [1, {}]",
                self.category, self.doc_count
            )));
        }
        Ok(())
    }

    pub fn df(&self, token: &str) -> u64 {
        self.df.get(token).copied().unwrap_or(0)
    }

    /// Smoothed inverse document frequency `ln((1 + N) / (1 + df)) + 1`.
    /// Unseen tokens use `df = 0`.
    pub fn idf(&self, token: &str) -> f64 {
        let n = self.doc_count as f64;
        let df = self.df(token) as f64;
        ((1.0 + n) / (1.0 + df)).ln() + 1.0
    }
}

pub fn idf(stats: &CategoryStats, token: &str) -> f64 {
    stats.idf(token)
}

pub type StatsMap = BTreeMap<String, CategoryStats>;

/// Builds one table per category from `(category, title)` pairs. Document
/// frequency counts titles containing a token, not occurrences.
pub fn build_category_stats<'a, I>(titles: I) -> StatsMap
where
    I: IntoIterator<Item = (&'a str, &'a str)>,
{
    let mut out = StatsMap::new();
    for (category, title) in titles {
        let entry = out
            .entry(category.to_string())
            .or_insert_with(|| CategoryStats {
                category: category.to_string(),
                doc_count: 0,
                df: BTreeMap::new(),
            });
        entry.doc_count += 1;
        let distinct: BTreeSet<String> = tokenize(title).into_iter().collect();
        for t in distinct {
            *entry.df.entry(t).or_insert(0) += 1;
        }
    }
    out
}

pub fn write_stats(path: &Path, stats: &StatsMap) -> Result<()> {
    let mut json = serde_json::to_string_pretty(stats)?;
    json.push('\n');
    std::fs::write(path, json).map_err(|e| Error::io(path, e))
}

pub fn read_stats(path: &Path) -> Result<StatsMap> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let map: StatsMap = serde_json::from_str(&text)?;
    for (key, s) in &map {
        if key != &s.category {
            return Err(Error::InvalidConfig(format!(
                "stats key {key:?} holds category {:?}",
                s.category
            )));
        }
        s.validate()?;
    }
    Ok(map)
}
