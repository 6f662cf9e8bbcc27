//! `CMXF` binary matrix files.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "CMXF"            4 bytes
//! version           u32 (= 1)
//! rows              u32
//! cols              u32
//! has_row_ids       u8 (0 or 1)
//! row ids           rows x (u32 byte length, UTF-8 bytes)   if has_row_ids = 1
//! values            rows * cols IEEE-754 binary64, row-major
//! ```

use std::path::Path;

use super::FeatureMatrix;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub const MAGIC: &[u8; 4] = b"CMXF";
pub const VERSION: u32 = 1;

fn u32_field(v: usize, what: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::DimensionMismatch(format!("{what} {v} exceeds u32")))
}

pub fn encode_matrix(m: &FeatureMatrix) -> Result<Vec<u8>> {
    let rows = u32_field(m.rows(), "rows")?;
    let cols = u32_field(m.cols(), "cols")?;
    let mut buf = Vec::with_capacity(17 + m.as_slice().len() * 8);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&rows.to_le_bytes());
    buf.extend_from_slice(&cols.to_le_bytes());
    match m.row_ids() {
        Some(ids) => {
            buf.push(1);
            for id in ids {
                buf.extend_from_slice(&u32_field(id.len(), "row id length")?.to_le_bytes());
                buf.extend_from_slice(id.as_bytes());
            }
        }
        None => buf.push(0),
    }
    for v in m.as_slice() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    Ok(buf)
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &'static str) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).ok_or(Error::Truncated(what))?;
        let s = self.buf.get(self.pos..end).ok_or(Error::Truncated(what))?;
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self, what: &'static str) -> Result<u32> {
        let b = self.take(4, what)?;
        Ok(u32::from_le_bytes(b.try_into().expect("4 bytes")))
    }
}

pub fn decode_matrix(bytes: &[u8]) -> Result<FeatureMatrix> {
    let mut r = Reader { buf: bytes, pos: 0 };
    if r.take(4, "magic").map_err(|_| Error::BadMagic)? != MAGIC {
        return Err(Error::BadMagic);
    }
    let version = r.u32("version")?;
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let rows = r.u32("rows")? as usize;
    let cols = r.u32("cols")? as usize;
    let has_ids = r.take(1, "row id flag")?[0];
    let row_ids = match has_ids {
        0 => None,
        1 => {
            let mut ids = Vec::with_capacity(rows.min(1 << 20));
            for _ in 0..rows {
                let len = r.u32("row id length")? as usize;
                let raw = r.take(len, "row id")?;
                let id = std::str::from_utf8(raw)
                    .map_err(|e| Error::RowIds(format!("invalid UTF-8: {e}")))?;
                ids.push(id.to_string());
            }
            Some(ids)
        }
        other => return Err(Error::RowIds(format!("bad row id flag {other}"))),
    };
    let count = rows
        .checked_mul(cols)
        .and_then(|c| c.checked_mul(8))
        .ok_or(Error::Truncated("values"))?;
    let raw = r.take(count, "values")?;
    if r.pos != bytes.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} trailing bytes after values",
            bytes.len() - r.pos
        )));
    }
    let data: Vec<f64> = raw
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    FeatureMatrix::new(Matrix::new(rows, cols, data)?, row_ids)
}

pub fn write_matrix(m: &FeatureMatrix, path: &Path) -> Result<()> {
    let bytes = encode_matrix(m)?;
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

pub fn read_matrix(path: &Path) -> Result<FeatureMatrix> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_matrix(&bytes)
}
