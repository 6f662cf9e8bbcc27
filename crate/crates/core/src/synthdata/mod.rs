//! Seeded generators with known structure.
//!
//! Every generator draws from purpose-named [`rng::Stream`]s, so identical
//! specs produce identical bits and the draws of one output never depend on
//! another.

pub mod rng;
mod retrieval;
mod two_view;

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

pub use retrieval::{gen_retrieval, RetrievalData, RetrievalSpec};
pub use two_view::{gen_two_view, TwoViewSpec};

use crate::error::{Error, Result};

pub fn read_spec<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_spec<T: Serialize>(spec: &T, path: &Path) -> Result<()> {
    let mut s = serde_json::to_string_pretty(spec)?;
    s.push('\n');
    std::fs::write(path, s).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cca::{fit, CcaConfig};
    use crate::textfeat::tokenize;

    fn two_view(t: usize, correlations: Vec<f64>, seed: u64) -> TwoViewSpec {
        TwoViewSpec { t, p: 3, q: 3, correlations, seed }
    }

    fn retrieval(t: usize, seed: u64) -> RetrievalSpec {
        RetrievalSpec {
            t,
            topic_dim: 6,
            d_text: 10,
            d_image: 8,
            text_coverage: 0.5,
            image_coverage: 0.5,
            noise: 1.0,
            prevalence: 0.78,
            seed,
        }
    }

    #[test]
    fn two_view_spec_validation() {
        assert!(two_view(10, vec![0.9, 0.5], 1).validate().is_ok());
        assert!(two_view(10, vec![0.5, 0.9], 1).validate().is_err());
        assert!(two_view(10, vec![1.0], 1).validate().is_err());
        assert!(two_view(10, vec![-0.1], 1).validate().is_err());
        assert!(two_view(10, vec![0.5; 4], 1).validate().is_err());
        assert!(two_view(0, vec![], 1).validate().is_err());
        assert!(gen_two_view(&two_view(10, vec![0.5, 0.9], 1)).is_err());
    }

    #[test]
    fn two_view_shapes_and_determinism() {
        let spec = TwoViewSpec { t: 50, p: 4, q: 2, correlations: vec![0.7], seed: 9 };
        let (x, y) = gen_two_view(&spec).unwrap();
        assert_eq!((x.shape(), y.shape()), ((50, 4), (50, 2)));
        let again = gen_two_view(&spec).unwrap();
        let other = gen_two_view(&TwoViewSpec { seed: 10, ..spec }).unwrap();
        assert_eq!(again, (x.clone(), y));
        assert_ne!(other.0, x);
    }

    #[test]
    fn near_perfect_correlation_is_recovered() {
        let (x, y) = gen_two_view(&two_view(10_000, vec![0.999], 11)).unwrap();
        let m = fit(&x, &y, CcaConfig::default()).unwrap();
        assert!(m.rho()[0] >= 0.99, "{:?}", m.rho());
    }

    #[test]
    fn no_correlations_means_pure_noise() {
        let (x, y) = gen_two_view(&two_view(10_000, vec![], 12)).unwrap();
        let m = fit(&x, &y, CcaConfig::default()).unwrap();
        assert!(m.rho().iter().all(|r| *r <= 0.05), "{:?}", m.rho());
    }

    #[test]
    fn sample_correlations_converge() {
        let target = [0.8, 0.4];
        let err = |t: usize| {
            // Average over seeds so the comparison is not a single-draw fluke.
            (0..8u64)
                .map(|seed| {
                    let (x, y) = gen_two_view(&two_view(t, target.to_vec(), 100 + seed)).unwrap();
                    let m = fit(&x, &y, CcaConfig::default().with_k(2)).unwrap();
                    m.rho().iter().zip(target).map(|(a, b)| (a - b).abs()).sum::<f64>()
                })
                .sum::<f64>()
        };
        let (coarse, fine) = (err(500), err(20_000));
        assert!(fine < coarse, "{fine} !< {coarse}");
    }

    #[test]
    fn retrieval_spec_validation() {
        let ok = retrieval(10, 1);
        assert!(ok.validate().is_ok());
        for bad in [
            RetrievalSpec { prevalence: 0.0, ..ok.clone() },
            RetrievalSpec { prevalence: 1.0, ..ok.clone() },
            RetrievalSpec { text_coverage: 0.0, ..ok.clone() },
            RetrievalSpec { image_coverage: 1.5, ..ok.clone() },
            RetrievalSpec { topic_dim: 0, ..ok.clone() },
            RetrievalSpec { noise: f64::NAN, ..ok.clone() },
        ] {
            assert!(matches!(bad.validate(), Err(Error::InvalidSpec(_))), "{bad:?}");
        }
    }

    #[test]
    fn coverage_slices() {
        let s = retrieval(1, 1);
        assert_eq!((s.text_dims(), s.image_dims()), (0..3, 3..6));
        let s = RetrievalSpec { text_coverage: 0.7, image_coverage: 0.7, ..s };
        assert_eq!((s.text_dims(), s.image_dims()), (0..5, 1..6));
        let s = RetrievalSpec { text_coverage: 0.01, image_coverage: 1.0, ..s };
        assert_eq!((s.text_dims(), s.image_dims()), (0..1, 0..6));
    }

    #[test]
    fn retrieval_outputs_are_consistent() {
        let data = gen_retrieval(&retrieval(200, 3)).unwrap();
        assert_eq!(data.q.shape(), (200, 10));
        assert_eq!(data.v.shape(), (200, 10));
        assert_eq!(data.u.shape(), (200, 8));
        assert_eq!(data.pairs.len(), 200);
        let ids = data.u.row_ids().unwrap();
        for (r, p) in data.pairs.iter().enumerate() {
            assert_eq!(p.image_id, ids[r]);
            assert_eq!(p.label, data.labels[r]);
            assert!(p.category.starts_with("cat"));
            assert!(!tokenize(&p.query).is_empty());
            // Titles only mention topic dims inside the text slice.
            for tok in tokenize(&p.title).iter().filter(|t| t.starts_with('t')) {
                let j: usize = tok[1..tok.len() - 1].parse().unwrap();
                assert!(j < 3, "{tok}");
            }
        }
        assert_eq!(gen_retrieval(&retrieval(200, 3)).unwrap(), data);
        assert_ne!(gen_retrieval(&retrieval(200, 4)).unwrap().q, data.q);
    }

    #[test]
    fn relevant_titles_share_query_tokens() {
        let data = gen_retrieval(&retrieval(50, 5)).unwrap();
        for p in &data.pairs {
            if p.label == 1 {
                let q = tokenize(&p.query);
                for tok in tokenize(&p.title).iter().filter(|t| t.starts_with('t')) {
                    assert!(q.contains(tok));
                }
            }
        }
    }

    #[test]
    fn label_balance_within_three_sigma() {
        let spec = RetrievalSpec { t: 10_000, ..retrieval(1, 6) };
        let data = gen_retrieval(&spec).unwrap();
        let pos = data.labels.iter().filter(|l| **l == 1).count() as f64;
        let sigma = (10_000.0 * 0.78 * 0.22f64).sqrt();
        assert!((pos - 7800.0).abs() <= 3.0 * sigma, "{pos}");
    }

    #[test]
    fn spec_files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("spec.json");
        let spec = retrieval(25, u64::MAX);
        write_spec(&spec, &path).unwrap();
        assert_eq!(read_spec::<RetrievalSpec>(&path).unwrap(), spec);
        let tv = two_view(5, vec![0.3], 2);
        write_spec(&tv, &path).unwrap();
        assert_eq!(read_spec::<TwoViewSpec>(&path).unwrap(), tv);
        std::fs::write(&path, "{\"t\": 5, \"bogus\": 1}").unwrap();
        assert!(read_spec::<TwoViewSpec>(&path).is_err());
    }
}
