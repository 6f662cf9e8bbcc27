//! Counter-based random streams.
//!
//! The `n`-th draw of a stream is `mix(key + n * GAMMA)` where `mix` is the
//! SplitMix64 finalizer and `key` is derived from the run seed and a purpose
//! label. Every purpose gets an independent stream, so adding a new consumer
//! never shifts the draws of an existing one, and the sequence can be
//! reproduced anywhere 64-bit wrapping arithmetic is available.

use crate::textfeat::fnv1a64;

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct Stream {
    key: u64,
    counter: u64,
    spare_normal: Option<f64>,
}

impl Stream {
    pub fn new(seed: u64, purpose: &str) -> Self {
        Self {
            key: mix(seed ^ mix(fnv1a64(purpose.as_bytes()))),
            counter: 0,
            spare_normal: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let x = self.key.wrapping_add(self.counter.wrapping_mul(GAMMA));
        self.counter = self.counter.wrapping_add(1);
        mix(x)
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `(0, 1]`.
    fn uniform_open_low(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box–Muller. Each uniform pair yields two normals;
    /// the second is returned by the next call.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.uniform_open_low();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }
}
