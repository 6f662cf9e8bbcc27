use serde::{Deserialize, Serialize};

use super::rng::Stream;
use crate::corpus::{FeatureMatrix, QueryItemPair};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Latent-topic retrieval corpus in which titles and images each see a
/// different slice of the item's topic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RetrievalSpec {
    pub t: usize,
    pub topic_dim: usize,
    pub d_text: usize,
    pub d_image: usize,
    /// Leading fraction of topic dims visible to titles.
    pub text_coverage: f64,
    /// Trailing fraction of topic dims visible to images.
    pub image_coverage: f64,
    pub noise: f64,
    pub prevalence: f64,
    pub seed: u64,
}

impl RetrievalSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.t == 0 || self.topic_dim == 0 || self.d_text == 0 || self.d_image == 0 {
            return bad("t, topic_dim, d_text and d_image must be >= 1".into());
        }
        for (name, c) in [("text_coverage", self.text_coverage), ("image_coverage", self.image_coverage)] {
            if !(c > 0.0 && c <= 1.0) {
                return bad(format!("{name} {c} outside (0, 1]"));
            }
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return bad(format!("noise {} must be finite and >= 0", self.noise));
        }
        if !(self.prevalence > 0.0 && self.prevalence < 1.0) {
            return bad(format!("prevalence {} outside (0, 1)", self.prevalence));
        }
        Ok(())
    }

    /// Topic dims seen by titles: `[0, ceil(text_coverage * k))`.
    pub fn text_dims(&self) -> std::ops::Range<usize> {
        0..covered(self.text_coverage, self.topic_dim)
    }

    /// Topic dims seen by images: the last `ceil(image_coverage * k)`.
    pub fn image_dims(&self) -> std::ops::Range<usize> {
        self.topic_dim - covered(self.image_coverage, self.topic_dim)..self.topic_dim
    }
}

fn covered(fraction: f64, k: usize) -> usize {
    ((fraction * k as f64).ceil() as usize).clamp(1, k)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RetrievalData {
    /// Text-emitting form of the same rows, for end-to-end pipeline runs.
    pub pairs: Vec<QueryItemPair>,
    pub q: FeatureMatrix,
    pub v: FeatureMatrix,
    /// Row ids are the pairs' image ids.
    pub u: FeatureMatrix,
    pub labels: Vec<u8>,
}

const CATEGORIES: usize = 4;
const FILLER_VOCAB: usize = 40;
const FILLER_PER_TEXT: usize = 2;
const MAX_TOPIC_REPEAT: usize = 3;

fn gaussian(t: usize, c: usize, s: &mut Stream, scale: f64) -> Matrix {
    Matrix::from_fn(t, c, |_, _| scale * s.normal())
}

/// Each pair draws a query topic and an independent alternative topic. A
/// relevant pair's item uses the query topic, an irrelevant one the
/// alternative. Queries see every topic dim through the text map; titles see
/// the `text_dims` slice through the same map and images the `image_dims`
/// slice through a separate image map. Every view gets isotropic noise.
pub fn gen_retrieval(spec: &RetrievalSpec) -> Result<RetrievalData> {
    spec.validate()?;
    let (t, k) = (spec.t, spec.topic_dim);
    let stream = |purpose: &str| Stream::new(spec.seed, purpose);
    let map_scale = 1.0 / (k as f64).sqrt();

    let text_map = gaussian(k, spec.d_text, &mut stream("retrieval/text-map"), map_scale);
    let image_map = gaussian(k, spec.d_image, &mut stream("retrieval/image-map"), map_scale);
    let z_q = gaussian(t, k, &mut stream("retrieval/query-topic"), 1.0);
    let z_o = gaussian(t, k, &mut stream("retrieval/other-topic"), 1.0);
    let mut label_stream = stream("retrieval/label");
    let labels: Vec<u8> = (0..t).map(|_| label_stream.bernoulli(spec.prevalence) as u8).collect();

    let z_i = Matrix::from_fn(t, k, |r, c| if labels[r] == 1 { z_q.get(r, c) } else { z_o.get(r, c) });
    let masked = |range: std::ops::Range<usize>| {
        Matrix::from_fn(t, k, |r, c| if range.contains(&c) { z_i.get(r, c) } else { 0.0 })
    };
    let z_text = masked(spec.text_dims());
    let z_image = masked(spec.image_dims());

    let noisy = |m: Matrix, purpose: &str| -> Result<Matrix> {
        let n = gaussian(m.rows(), m.cols(), &mut stream(purpose), spec.noise);
        let mut out = m;
        for (a, b) in out.as_mut_slice().iter_mut().zip(n.as_slice()) {
            *a += b;
        }
        Ok(out)
    };
    let q = noisy(z_q.matmul(&text_map)?, "retrieval/query-noise")?;
    let v = noisy(z_text.matmul(&text_map)?, "retrieval/title-noise")?;
    let u = noisy(z_image.matmul(&image_map)?, "retrieval/image-noise")?;

    let image_ids: Vec<String> = (0..t).map(|r| format!("img{r}")).collect();
    let mut words = stream("retrieval/words");
    let mut cats = stream("retrieval/category");
    let pairs = (0..t)
        .map(|r| QueryItemPair {
            query: topic_text(z_q.row(r), 0..k, &mut words),
            title: topic_text(z_i.row(r), spec.text_dims(), &mut words),
            category: format!("cat{}", (cats.uniform() * CATEGORIES as f64) as usize),
            image_id: image_ids[r].clone(),
            label: labels[r],
        })
        .collect();

    Ok(RetrievalData {
        pairs,
        q: FeatureMatrix::from_matrix(q)?,
        v: FeatureMatrix::from_matrix(v)?,
        u: FeatureMatrix::new(u, Some(image_ids))?,
        labels,
    })
}

/// Topic dim `j` becomes `t{j}p` or `t{j}n` by sign, repeated
/// `1 + floor(|z_j|)` times up to a cap, followed by filler words.
fn topic_text(z: &[f64], dims: std::ops::Range<usize>, words: &mut Stream) -> String {
    let mut tokens = Vec::new();
    for j in dims {
        let sign = if z[j] >= 0.0 { 'p' } else { 'n' };
        let reps = (1 + z[j].abs() as usize).min(MAX_TOPIC_REPEAT);
        tokens.extend(std::iter::repeat_n(format!("t{j}{sign}"), reps));
    }
    for _ in 0..FILLER_PER_TEXT {
        tokens.push(format!("w{}", (words.uniform() * FILLER_VOCAB as f64) as usize));
    }
    tokens.join(" ")
}
