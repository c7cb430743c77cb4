//! Seeded randomness and G(n,p) sampling.
//!
//! Every generator is a ChaCha8 stream whose 32-byte key is expanded from a
//! 64-bit value by SplitMix64. Trial `i` of a run with master seed `s` uses
//! `splitmix64(s + 0x9E3779B97F4A7C15 * (i + 1))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

impl Seed {
    /// Seed of trial `index` under this master seed.
    pub fn trial(self, index: u64) -> Seed {
        Seed(splitmix64(
            self.0
                .wrapping_add(GOLDEN.wrapping_mul(index.wrapping_add(1))),
        ))
    }

    /// Independent named sub-stream, e.g. one per sampled graph in a trial.
    pub fn derive(self, stream: u64) -> Seed {
        Seed(splitmix64(
            self.0 ^ splitmix64(stream.wrapping_add(0xA5A5_A5A5)),
        ))
    }

    pub fn rng(self) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        let mut s = self.0;
        for chunk in key.chunks_mut(8) {
            s = splitmix64(s);
            chunk.copy_from_slice(&s.to_le_bytes());
        }
        ChaCha8Rng::from_seed(key)
    }
}

pub fn check_probability(p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(Error::Probability(p))
    }
}

/// Samples G(n,p) by geometric jumps over the lexicographic pair order, so
/// the cost is O(n + n²p) in expectation.
pub fn sample_gnp(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    check_probability(p)?;
    if p == 0.0 || n < 2 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(Graph::complete(n));
    }
    let mut rng = seed.rng();
    let log_q = (-p).ln_1p();
    let total = (n as u128) * (n as u128 - 1) / 2;
    let mut edges = Vec::with_capacity((total as f64 * p * 1.1) as usize + 16);
    // pair index k ↦ (u, v) walks row by row
    let (mut u, mut row_start, mut row_len) = (0usize, 0u128, (n - 1) as u128);
    let mut k: u128 = 0;
    loop {
        let r: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
        let skip = (r.ln() / log_q).floor();
        if !skip.is_finite() || skip >= (total - k) as f64 {
            break;
        }
        k += skip as u128;
        if k >= total {
            break;
        }
        while k >= row_start + row_len {
            row_start += row_len;
            u += 1;
            row_len -= 1;
        }
        let v = u + 1 + (k - row_start) as usize;
        edges.push((u, v));
        k += 1;
        if k >= total {
            break;
        }
    }
    Graph::from_edges(n, edges)
}

/// Symmetric split `p1 = p2 = 1 − √(1 − p)` so that `(1−p1)(1−p2) = 1−p`.
pub fn two_round_split(p: f64) -> Result<(f64, f64)> {
    check_probability(p)?;
    // 1 − √(1−p) computed without cancellation
    let p1 = if p == 1.0 {
        1.0
    } else {
        p / (1.0 + (1.0 - p).sqrt())
    };
    Ok((p1, p1))
}

/// Two independent rounds whose union is distributed as G(n,p).
pub fn sample_two_round(n: usize, p: f64, seed: Seed) -> Result<(Graph, Graph)> {
    let (p1, p2) = two_round_split(p)?;
    Ok((
        sample_gnp(n, p1, seed.derive(1))?,
        sample_gnp(n, p2, seed.derive(2))?,
    ))
}
