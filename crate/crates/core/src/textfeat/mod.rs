//! Hashed TF-IDF text features.
//!
//! Queries and titles are tokenized, weighted by term count times a smoothed
//! idf taken from the item titles of the pair's listing category, and folded
//! into `d` buckets with a signed hash. The same category table is used for
//! the query and the title of a pair.

mod hashing;
mod stats;
mod tokenize;

use rayon::prelude::*;

pub use hashing::{fnv1a64, hashed_tfidf, HashSpec, DEFAULT_HASH_DIM, HASH_ALGORITHM};
pub use stats::{build_category_stats, idf, read_stats, write_stats, CategoryStats, StatsMap};
pub use tokenize::tokenize;

use crate::corpus::{FeatureMatrix, QueryItemPair};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Stats over the titles of `pairs`, one table per category.
pub fn stats_from_pairs(pairs: &[QueryItemPair]) -> StatsMap {
    build_category_stats(pairs.iter().map(|p| (p.category.as_str(), p.title.as_str())))
}

/// Query matrix `Q` and title matrix `V`, one row per pair, both `spec.dim()`
/// wide. Rows are featurized in parallel; output order follows `pairs`.
pub fn featurize_pairs(
    pairs: &[QueryItemPair],
    stats: &StatsMap,
    spec: &HashSpec,
) -> Result<(FeatureMatrix, FeatureMatrix)> {
    let tables = pairs
        .iter()
        .enumerate()
        .map(|(row, p)| {
            stats.get(&p.category).ok_or_else(|| Error::MissingCategory {
                category: p.category.clone(),
                row,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let rows: Vec<(Vec<f64>, Vec<f64>)> = pairs
        .par_iter()
        .zip(tables.par_iter())
        .map(|(p, table)| {
            (
                hashed_tfidf(&p.query, table, spec),
                hashed_tfidf(&p.title, table, spec),
            )
        })
        .collect();

    let d = spec.dim();
    let mut q = Vec::with_capacity(rows.len() * d);
    let mut v = Vec::with_capacity(rows.len() * d);
    for (qr, vr) in rows {
        q.extend(qr);
        v.extend(vr);
    }
    let n = pairs.len();
    Ok((
        FeatureMatrix::from_matrix(Matrix::new(n, d, q)?)?,
        FeatureMatrix::from_matrix(Matrix::new(n, d, v)?)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(query: &str, title: &str, category: &str) -> QueryItemPair {
        QueryItemPair {
            query: query.into(),
            title: title.into(),
            category: category.into(),
            image_id: "i".into(),
            label: 1,
        }
    }

    #[test]
    fn identical_query_and_title_give_identical_rows() {
        let pairs = vec![pair("red shoe", "red shoe", "c"), pair("hat", "blue hat", "c")];
        let stats = stats_from_pairs(&pairs);
        let (q, v) = featurize_pairs(&pairs, &stats, &HashSpec::new(32).unwrap()).unwrap();
        assert_eq!(q.shape(), (2, 32));
        assert_eq!(q.row(0), v.row(0));
        assert_ne!(q.row(1), v.row(1));
    }

    #[test]
    fn unseen_query_tokens_use_unseen_idf() {
        let pairs = vec![pair("zebra", "red shoe", "c"), pair("q", "blue hat", "c")];
        let stats = stats_from_pairs(&pairs);
        let spec = HashSpec::new(64).unwrap();
        let (q, _) = featurize_pairs(&pairs, &stats, &spec).unwrap();
        let (i, sign) = spec.slot("zebra");
        assert_eq!(q.get(0, i), sign * ((3.0f64).ln() + 1.0));
    }

    #[test]
    fn category_scopes_idf() {
        let pairs = vec![
            pair("red", "red shoe", "a"),
            pair("red", "blue hat", "b"),
            pair("x", "blue cap", "b"),
        ];
        let stats = stats_from_pairs(&pairs);
        let (q, _) = featurize_pairs(&pairs, &stats, &HashSpec::new(16).unwrap()).unwrap();
        assert_ne!(q.row(0), q.row(1));
    }

    #[test]
    fn missing_category_names_row() {
        let pairs = vec![pair("a", "b", "known"), pair("a", "b", "other")];
        let stats = stats_from_pairs(&pairs[..1]);
        let err = featurize_pairs(&pairs, &stats, &HashSpec::default()).unwrap_err();
        match err {
            Error::MissingCategory { category, row } => {
                assert_eq!(category, "other");
                assert_eq!(row, 1);
            }
            other => panic!("unexpected {other}"),
        }
    }
}
