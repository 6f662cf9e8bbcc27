//! Canonical correlation analysis between a query view `Q` (t x m) and an
//! item view `I` (t x n).
//!
//! [`fit`] learns bases `w_q`, `w_i` such that the projected views
//! `Q' = (Q - mean_q) w_q` and `I' = (I - mean_i) w_i` are each white and
//! pairwise correlated only component by component, with correlations `rho`
//! in descending order. [`verify_constraints`] re-derives those properties
//! from the training data.

mod constraints;
mod fit;
mod model;
mod persist;

pub use constraints::{verify_constraints, ConstraintDeviations, ConstraintReport, CONSTRAINT_TOLERANCE};
pub use fit::{fit, project_item, project_query};
pub use model::{CcaConfig, CcaModel, ItemBlock, DEFAULT_RIDGE};
pub use persist::{load_model, model_from_json, model_to_json, save_model, MODEL_VERSION};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::linalg::Matrix;
    use crate::synthdata::rng::Stream;

    fn gaussian(t: usize, c: usize, s: &mut Stream) -> Matrix {
        Matrix::from_fn(t, c, |_, _| s.normal())
    }

    /// Two views sharing a few latent factors plus independent noise.
    fn correlated(t: usize, m: usize, n: usize, seed: u64) -> (Matrix, Matrix) {
        let mut s = Stream::new(seed, "cca-test");
        let z = gaussian(t, 2, &mut s);
        let q = Matrix::from_fn(t, m, |r, j| z.get(r, j % 2) * (1.0 + j as f64 * 0.1) + s.normal());
        let i = Matrix::from_fn(t, n, |r, j| z.get(r, (j + 1) % 2) * 0.5 + s.normal());
        (q, i)
    }

    fn column_correlation(a: &[f64], b: &[f64]) -> f64 {
        let n = a.len() as f64;
        let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
        let mut sab = 0.0;
        let mut saa = 0.0;
        let mut sbb = 0.0;
        for (x, y) in a.iter().zip(b) {
            sab += (x - ma) * (y - mb);
            saa += (x - ma).powi(2);
            sbb += (y - mb).powi(2);
        }
        sab / (saa * sbb).sqrt()
    }

    #[test]
    fn identical_views_correlate_perfectly() {
        let mut s = Stream::new(1, "same");
        let q = gaussian(200, 4, &mut s);
        let model = fit(&q, &q, CcaConfig::default().with_ridge(0.0)).unwrap();
        assert_eq!(model.k(), 4);
        for r in model.rho() {
            assert!((r - 1.0).abs() < 1e-8, "rho {r}");
        }
    }

    #[test]
    fn independent_views_have_small_correlations() {
        let mut s = Stream::new(2, "indep");
        let q = gaussian(10_000, 3, &mut s);
        let i = gaussian(10_000, 3, &mut s);
        let model = fit(&q, &i, CcaConfig::default().with_ridge(0.0)).unwrap();
        assert!(model.rho().iter().all(|r| *r <= 0.05), "{:?}", model.rho());
    }

    #[test]
    fn one_dimensional_population_correlation() {
        let mut s = Stream::new(3, "one-dim");
        let t = 100_000;
        let x = gaussian(t, 1, &mut s);
        let y = Matrix::from_fn(t, 1, |r, _| 0.8 * x.get(r, 0) + 0.6 * s.normal());
        let model = fit(&x, &y, CcaConfig::default()).unwrap();
        assert!((model.rho()[0] - 0.8).abs() < 0.01, "rho {}", model.rho()[0]);
    }

    #[test]
    fn projections_center_and_correlate() {
        let (q, i) = correlated(400, 4, 6, 4);
        let model = fit(&q, &i, CcaConfig::default().with_ridge(0.0)).unwrap();

        let mean_row = Matrix::new(1, 4, model.mean_q().to_vec()).unwrap();
        let p = project_query(&model, &mean_row).unwrap();
        assert!(p.as_slice().iter().all(|v| *v == 0.0));

        let pq = project_query(&model, &q).unwrap();
        let pi = project_item(&model, &i).unwrap();
        assert_eq!(pq.shape(), (400, 4));
        assert_eq!(pi.shape(), (400, 4));
        for j in 0..model.k() {
            let r = column_correlation(&pq.col(j), &pi.col(j));
            assert!((r - model.rho()[j]).abs() < 1e-6, "component {j}: {r} vs {}", model.rho()[j]);
        }
    }

    #[test]
    fn identity_basis_projection_is_passthrough() {
        let model = CcaModel::from_parts(
            vec![0.0; 2],
            vec![0.0; 3],
            Matrix::identity(2),
            Matrix::from_rows(&[[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]),
            vec![0.9, 0.1],
            CcaConfig::default(),
        )
        .unwrap();
        let q = Matrix::from_rows(&[[1.5, -2.0], [0.0, 3.0]]);
        assert_eq!(project_query(&model, &q).unwrap(), q);
        assert!(project_query(&model, &Matrix::zeros(1, 3)).is_err());
        assert!(project_item(&model, &Matrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn fresh_fit_satisfies_constraints() {
        let (q, i) = correlated(300, 5, 7, 5);
        let model = fit(&q, &i, CcaConfig::default().with_ridge(0.0)).unwrap();
        let report = verify_constraints(&model, &q, &i).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.regularized.max() <= 1e-8, "{report:?}");
        assert_eq!(report.regularized, report.unregularized);
    }

    #[test]
    fn perturbed_basis_fails_whitening() {
        let (q, i) = correlated(300, 3, 4, 6);
        let model = fit(&q, &i, CcaConfig::default().with_ridge(0.0)).unwrap();
        let mut w_q = model.w_q().clone();
        w_q.set(0, 0, w_q.get(0, 0) + 0.1);
        let bad = CcaModel::from_parts(
            model.mean_q().to_vec(),
            model.mean_i().to_vec(),
            w_q,
            model.w_i().clone(),
            model.rho().to_vec(),
            *model.config(),
        )
        .unwrap();
        let report = verify_constraints(&bad, &q, &i).unwrap();
        assert!(!report.passed);
        assert!(report.regularized.query_whitening > 1e-3);
    }

    #[test]
    fn heavy_ridge_holds_against_regularized_covariances() {
        let (q, i) = correlated(300, 4, 5, 7);
        let model = fit(&q, &i, CcaConfig::default().with_ridge(0.1)).unwrap();
        let report = verify_constraints(&model, &q, &i).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.unregularized.query_whitening > 1e-3);
        assert!(report.unregularized.item_whitening > 1e-3);
    }

    #[test]
    fn relation_residuals_absolute() {
        let (q, i) = correlated(500, 4, 6, 8);
        let model = fit(&q, &i, CcaConfig::default().with_ridge(0.0)).unwrap();
        let (qc, _) = crate::linalg::center_columns(&q).unwrap();
        let (ic, _) = crate::linalg::center_columns(&i).unwrap();
        let b = crate::linalg::covariance_blocks(&qc, &ic).unwrap();
        for j in 0..model.k() {
            let wq = Matrix::new(4, 1, model.w_q().col(j)).unwrap();
            let wi = Matrix::new(6, 1, model.w_i().col(j)).unwrap();
            let cq = b.c_qq.matmul(&wq).unwrap();
            let ci = b.c_ii.matmul(&wi).unwrap();
            let lq = (wi.t_matmul(&ci).unwrap().get(0, 0) / wq.t_matmul(&cq).unwrap().get(0, 0)).sqrt();
            let lhs = b.c_qi.matmul(&wi).unwrap();
            let r = lhs.sub(&cq.scaled(model.rho()[j] * lq)).unwrap().frobenius_norm();
            assert!(r <= 1e-7, "component {j}: {r}");
        }
    }

    #[test]
    fn fit_preconditions() {
        let one = Matrix::zeros(1, 2);
        assert!(matches!(
            fit(&one, &one, CcaConfig::default()),
            Err(Error::TooFewRows { .. })
        ));
        let q = Matrix::zeros(3, 2);
        assert!(fit(&q, &Matrix::zeros(4, 2), CcaConfig::default()).is_err());
        let mut bad = Matrix::from_fn(3, 2, |r, c| (r + c) as f64);
        bad.set(1, 1, f64::NAN);
        assert!(matches!(
            fit(&bad, &bad, CcaConfig::default()),
            Err(Error::NonFinite { .. })
        ));
        let (q, i) = correlated(50, 3, 2, 9);
        assert!(fit(&q, &i, CcaConfig::default().with_k(3)).is_err());
        assert!(fit(&q, &i, CcaConfig::default().with_ridge(-1.0)).is_err());
        assert!(fit(&q, &i, CcaConfig::default().with_min_correlation(1.0)).is_err());
    }

    #[test]
    fn constant_view_reports_ridge_advice() {
        let q = Matrix::from_fn(10, 2, |_, _| 1.0);
        let (_, i) = correlated(10, 2, 2, 10);
        let err = fit(&q, &i, CcaConfig::default()).unwrap_err();
        assert!(matches!(err, Error::IllConditioned { view: "query", pivot: 0 }));
        assert!(err.to_string().contains("ridge"));
    }

    #[test]
    fn default_k_is_narrower_view() {
        let (q, i) = correlated(100, 3, 5, 11);
        assert_eq!(fit(&q, &i, CcaConfig::default()).unwrap().k(), 3);
        let (q, i) = correlated(100, 5, 3, 12);
        assert_eq!(fit(&q, &i, CcaConfig::default()).unwrap().k(), 3);
    }

    #[test]
    fn min_correlation_drops_trailing() {
        let (q, i) = correlated(2000, 4, 4, 13);
        let full = fit(&q, &i, CcaConfig::default()).unwrap();
        let floor = 0.5 * (full.rho()[1] + full.rho()[2]);
        let cut = fit(&q, &i, CcaConfig::default().with_min_correlation(floor)).unwrap();
        assert_eq!(cut.k(), 2);
        assert_eq!(cut.rho(), &full.rho()[..2]);
    }

    #[test]
    fn sign_convention_on_query_basis() {
        let (q, i) = correlated(200, 4, 4, 14);
        let model = fit(&q, &i, CcaConfig::default()).unwrap();
        for j in 0..model.k() {
            let col = model.w_q().col(j);
            let big = col.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
            assert!(big > 0.0);
        }
    }

    #[test]
    fn joint_row_permutation_invariance() {
        let (q, i) = correlated(300, 4, 5, 16);
        let t = q.rows();
        let perm: Vec<usize> = (0..t).map(|r| (r * 7 + 3) % t).collect();
        let qp = Matrix::from_fn(t, 4, |r, c| q.get(perm[r], c));
        let ip = Matrix::from_fn(t, 5, |r, c| i.get(perm[r], c));
        let a = fit(&q, &i, CcaConfig::default()).unwrap();
        let b = fit(&qp, &ip, CcaConfig::default()).unwrap();
        for (x, y) in a.rho().iter().zip(b.rho()) {
            assert!((x - y).abs() <= 1e-10);
        }
        assert!(a.w_q().sub(b.w_q()).unwrap().max_abs() <= 1e-10);
        assert!(a.w_i().sub(b.w_i()).unwrap().max_abs() <= 1e-10);
    }

    #[test]
    fn correlations_are_scale_free() {
        let (q, i) = correlated(300, 4, 5, 17);
        let a = fit(&q, &i, CcaConfig::default()).unwrap();
        let b = fit(&q.scaled(37.5), &i, CcaConfig::default()).unwrap();
        for (x, y) in a.rho().iter().zip(b.rho()) {
            assert!((x - y).abs() <= 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn fewer_components_are_a_prefix() {
        let (q, i) = correlated(300, 5, 6, 18);
        let full = fit(&q, &i, CcaConfig::default().with_k(5)).unwrap();
        for j in 1..5 {
            let part = fit(&q, &i, CcaConfig::default().with_k(j)).unwrap();
            for (x, y) in part.rho().iter().zip(full.rho()) {
                assert!((x - y).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let (q, i) = correlated(100, 3, 4, 15);
        let model = fit(&q, &i, CcaConfig::default())
            .unwrap()
            .with_hash_spec(crate::textfeat::HashSpec::new(3).unwrap())
            .with_item_blocks(vec![
                ItemBlock { name: "image".into(), cols: 2 },
                ItemBlock { name: "title".into(), cols: 2 },
            ])
            .unwrap();
        let json = model_to_json(&model).unwrap();
        assert_eq!(model_from_json(&json).unwrap(), model);

        let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
        v["rho"] = serde_json::json!([0.5, 0.9, 0.1]);
        assert!(matches!(
            model_from_json(&v.to_string()),
            Err(Error::InvalidModel(_))
        ));

        let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let w = v["w_q"].as_array().unwrap()[..6].to_vec();
        v["w_q"] = serde_json::Value::Array(w);
        assert!(model_from_json(&v.to_string()).is_err());

        let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
        v["version"] = serde_json::json!(2);
        assert!(model_from_json(&v.to_string()).is_err());

        assert!(model_from_json("{}").is_err());
    }
}
