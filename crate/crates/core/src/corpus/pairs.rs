use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textfeat::tokenize;

/// One judged query-item pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryItemPair {
    pub query: String,
    pub title: String,
    pub category: String,
    pub image_id: String,
    /// 1 = relevant, 0 = irrelevant.
    pub label: u8,
}

impl QueryItemPair {
    pub fn is_relevant(&self) -> bool {
        self.label == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    /// 1-based line number in the source file.
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoadedPairs {
    pub pairs: Vec<QueryItemPair>,
    pub rejections: Vec<Rejection>,
}

impl LoadedPairs {
    pub fn labels(&self) -> Vec<u8> {
        self.pairs.iter().map(|p| p.label).collect()
    }
}

#[derive(Deserialize)]
struct RawPair {
    query: String,
    title: String,
    category: String,
    image_id: String,
    label: serde_json::Value,
}

fn parse_line(line: &str) -> std::result::Result<QueryItemPair, String> {
    if line.trim().is_empty() {
        return Err("empty line".into());
    }
    let raw: RawPair = serde_json::from_str(line).map_err(|e| format!("malformed record: {e}"))?;
    let label = match raw.label.as_u64() {
        Some(l @ (0 | 1)) => l as u8,
        Some(_) => return Err("label out of range".into()),
        None if raw.label.is_i64() => return Err("label out of range".into()),
        None => return Err("label is not an integer".into()),
    };
    if tokenize(&raw.query).is_empty() {
        return Err("query has no tokens".into());
    }
    if tokenize(&raw.title).is_empty() {
        return Err("title has no tokens".into());
    }
    if raw.category.is_empty() {
        return Err("empty category".into());
    }
    Ok(QueryItemPair {
        query: raw.query,
        title: raw.title,
        category: raw.category,
        image_id: raw.image_id,
        label,
    })
}

/// Parses JSONL text. In strict mode the first invalid record is an error;
/// otherwise invalid records are skipped and reported.
pub fn parse_pairs(text: &str, strict: bool) -> Result<LoadedPairs> {
    let mut out = LoadedPairs::default();
    for (i, line) in text.lines().enumerate() {
        match parse_line(line) {
            Ok(p) => out.pairs.push(p),
            Err(reason) if strict => {
                return Err(Error::InvalidRecord { line: i + 1, reason });
            }
            Err(reason) => out.rejections.push(Rejection { line: i + 1, reason }),
        }
    }
    Ok(out)
}

pub fn load_pairs(path: &Path, strict: bool) -> Result<LoadedPairs> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_pairs(&text, strict)
}

pub fn write_pairs(path: &Path, pairs: &[QueryItemPair]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for p in pairs {
        serde_json::to_writer(&mut w, p)?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
