use std::path::Path;

use anyhow::{bail, ensure, Context, Result};

use crossrel::cca::{self, CcaConfig, ItemBlock};
use crossrel::corpus::{assemble_views, load_pairs, read_matrix, write_matrix, write_pairs, FeatureMatrix, ImageFeatureStore};
use crossrel::eval::{self, pr_points, roc_points};
use crossrel::linalg::Matrix;
use crossrel::similarity::{self, read_scores, write_scores};
use crossrel::synthdata::{gen_retrieval, gen_two_view, read_spec, RetrievalSpec, TwoViewSpec};
use crossrel::textfeat::{featurize_pairs, stats_from_pairs, write_stats, HashSpec};

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))
}

fn matrix(path: &Path) -> Result<FeatureMatrix> {
    read_matrix(path).with_context(|| format!("reading {}", path.display()))
}

pub fn synth_two_view(spec: &Path, out: &Path, seed: Option<u64>) -> Result<()> {
    let mut spec: TwoViewSpec = read_spec(spec).with_context(|| format!("spec {}", spec.display()))?;
    if let Some(seed) = seed {
        spec.seed = seed;
    }
    let (x, y) = gen_two_view(&spec)?;
    ensure_dir(out)?;
    write_matrix(&x, &out.join("X.cmxf"))?;
    write_matrix(&y, &out.join("Y.cmxf"))?;
    println!(
        "two-view: t={} p={} q={} correlations={:?} seed={}",
        spec.t, spec.p, spec.q, spec.correlations, spec.seed
    );
    Ok(())
}

pub fn synth_retrieval(spec: &Path, out: &Path, seed: Option<u64>) -> Result<()> {
    let mut spec: RetrievalSpec = read_spec(spec).with_context(|| format!("spec {}", spec.display()))?;
    if let Some(seed) = seed {
        spec.seed = seed;
    }
    let data = gen_retrieval(&spec)?;
    ensure_dir(out)?;
    write_pairs(&out.join("pairs.jsonl"), &data.pairs)?;
    write_matrix(&data.q, &out.join("Q.cmxf"))?;
    write_matrix(&data.v, &out.join("V.cmxf"))?;
    write_matrix(&data.u, &out.join("U.cmxf"))?;
    let positives = data.labels.iter().filter(|l| **l == 1).count();
    println!(
        "retrieval: t={} positives={} topic_dim={} d_text={} d_image={} seed={}",
        spec.t, positives, spec.topic_dim, spec.d_text, spec.d_image, spec.seed
    );
    Ok(())
}

pub fn featurize(pairs: &Path, images: &Path, dim: usize, out: &Path, strict: bool) -> Result<()> {
    let loaded = load_pairs(pairs, strict).with_context(|| format!("pairs {}", pairs.display()))?;
    for r in &loaded.rejections {
        eprintln!("skipped line {}: {}", r.line, r.reason);
    }
    ensure!(!loaded.pairs.is_empty(), "no usable pairs in {}", pairs.display());
    let store = ImageFeatureStore::load(images).with_context(|| format!("images {}", images.display()))?;
    let spec = HashSpec::new(dim)?;
    let stats = stats_from_pairs(&loaded.pairs);
    let (q, v) = featurize_pairs(&loaded.pairs, &stats, &spec)?;
    let views = assemble_views(&loaded.pairs, &store, q, v)?;

    ensure_dir(out)?;
    write_matrix(&views.q, &out.join("Q.cmxf"))?;
    write_matrix(&views.v, &out.join("V.cmxf"))?;
    write_matrix(&views.u, &out.join("U.cmxf"))?;
    write_stats(&out.join("stats.json"), &stats)?;
    println!(
        "featurize: pairs={} skipped={} d={} image_dim={} categories={}",
        loaded.pairs.len(),
        loaded.rejections.len(),
        dim,
        store.dim(),
        stats.len()
    );
    Ok(())
}

pub struct FitInputs<'a> {
    pub q: &'a Path,
    pub u: &'a Path,
    pub v: &'a Path,
    pub k: Option<usize>,
    pub ridge: f64,
    pub min_correlation: f64,
    pub dim: Option<usize>,
    pub model: &'a Path,
}

/// `[U | V]`, image columns first.
fn item_view(u: &Matrix, v: &Matrix) -> Result<Matrix> {
    ensure!(
        u.rows() == v.rows(),
        "image view has {} rows, title view has {}",
        u.rows(),
        v.rows()
    );
    Ok(u.hcat(v)?)
}

pub fn fit(args: &FitInputs) -> Result<()> {
    let (q, u, v) = (matrix(args.q)?, matrix(args.u)?, matrix(args.v)?);
    ensure!(
        q.rows() == u.rows(),
        "query view has {} rows, image view has {}",
        q.rows(),
        u.rows()
    );
    let i = item_view(&u, &v)?;
    let mut config = CcaConfig::default()
        .with_ridge(args.ridge)
        .with_min_correlation(args.min_correlation);
    config.k = args.k;

    let mut model = cca::fit(&q, &i, config)?.with_item_blocks(vec![
        ItemBlock { name: "image".into(), cols: u.cols() },
        ItemBlock { name: "title".into(), cols: v.cols() },
    ])?;
    if let Some(d) = args.dim {
        ensure!(
            q.cols() == d && v.cols() == d,
            "--dim {d} does not match text view widths {} and {}",
            q.cols(),
            v.cols()
        );
        model = model.with_hash_spec(HashSpec::new(d)?);
    }
    cca::save_model(&model, args.model)?;

    let top: Vec<String> = model.rho().iter().take(5).map(|r| format!("{r:.4}")).collect();
    println!(
        "fit: t={} m={} n={} k={} top rho=[{}]",
        q.rows(),
        model.m(),
        model.n(),
        model.k(),
        top.join(", ")
    );
    Ok(())
}

fn labels(pairs: &Path, rows: usize) -> Result<Vec<u8>> {
    let loaded = load_pairs(pairs, true).with_context(|| format!("pairs {}", pairs.display()))?;
    let labels = loaded.labels();
    ensure!(
        labels.len() == rows,
        "{} pairs but the feature matrices have {rows} rows",
        labels.len()
    );
    Ok(labels)
}

pub fn score_baseline(pairs: &Path, q: &Path, v: &Path, out: &Path) -> Result<()> {
    let (q, v) = (matrix(q)?, matrix(v)?);
    let labels = labels(pairs, q.rows())?;
    let scores = similarity::score_baseline(&q, &v, &labels)?;
    write_scores(out, &scores)?;
    println!("score: mode=baseline rows={}", scores.len());
    Ok(())
}

pub fn score_cca(pairs: &Path, q: &Path, u: &Path, v: &Path, model: &Path, out: &Path) -> Result<()> {
    let model = cca::load_model(model).with_context(|| format!("model {}", model.display()))?;
    let (q, u, v) = (matrix(q)?, matrix(u)?, matrix(v)?);
    if let [image, title] = model.item_blocks() {
        if image.cols != u.cols() || title.cols != v.cols() {
            bail!(
                "model expects image/title widths {}/{}, got {}/{}",
                image.cols,
                title.cols,
                u.cols(),
                v.cols()
            );
        }
    }
    let i = item_view(&u, &v)?;
    let labels = labels(pairs, q.rows())?;
    let scores = similarity::score_cca(&model, &q, &i, &labels)?;
    write_scores(out, &scores)?;
    println!("score: mode=cca rows={} k={}", scores.len(), model.k());
    Ok(())
}

pub fn eval(scores: &Path, out: &Path) -> Result<()> {
    let scored = read_scores(scores).with_context(|| format!("scores {}", scores.display()))?;
    let report = eval::evaluate(&scored)?;
    ensure_dir(out)?;
    eval::write_metrics(&report, &out.join("metrics.json"))?;
    eval::write_roc_csv(&roc_points(&scored)?, &out.join("roc.csv"))?;
    eval::write_pr_csv(&pr_points(&scored)?, &out.join("pr.csv"))?;
    println!(
        "eval: n={} positives={} auroc={:.4} auprc={:.4}",
        report.n, report.positives, report.auroc, report.auprc
    );
    Ok(())
}

pub fn compare(baseline: &Path, proposed: &Path, out: Option<&Path>) -> Result<()> {
    let b = read_scores(baseline).with_context(|| format!("scores {}", baseline.display()))?;
    let p = read_scores(proposed).with_context(|| format!("scores {}", proposed.display()))?;
    let cmp = eval::compare(&b, &p)?;
    if let Some(out) = out {
        eval::write_comparison(&cmp, out)?;
    }
    println!("compare: {}", cmp.summary());
    Ok(())
}
