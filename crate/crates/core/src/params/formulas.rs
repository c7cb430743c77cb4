//! Closed-form lower bounds for `R = H ∪ G(n,p)` as functions of `n`, `p`
//! and the maximum degree of `H`. Random-graph constants that are only known
//! to exist are inputs (default 1), so outputs are "in units of r".

// negated comparisons below also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use crate::error::{Error, Result};
use crate::params::ringel_youngs;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundFormulaInput {
    pub n: f64,
    pub p: f64,
    pub delta: f64,
    /// Scale constant `C` of the partition.
    pub c_big: f64,
    /// Lower edge `c/n` of the range where the random-graph bounds hold.
    pub c: f64,
    pub r: f64,
    /// Constants of the piecewise Hadwiger estimate.
    pub r_h: f64,
    pub c_h: f64,
}

impl BoundFormulaInput {
    pub fn new(n: f64, p: f64, delta: f64, c_big: f64) -> Self {
        BoundFormulaInput {
            n,
            p,
            delta,
            c_big,
            c: 1.2,
            r: 1.0,
            r_h: 1.0,
            c_h: 4.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaBranch {
    /// `Δ ≤ √(n²p·ln n²p)`: the minor contains a random graph `G(m, q)`.
    Random,
    /// Larger `Δ`: the minor contains a clique on `⌊m⌋` vertices.
    Clique,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremPrediction {
    pub n2p: f64,
    pub big_l: f64,
    pub big_m: f64,
    pub m: f64,
    pub q: f64,
    pub branch: DeltaBranch,
    /// `Δ ≤ n²p/(9600C)` holds.
    pub degree_ok: bool,
    /// `q ≥ c/m`, the range where the random-graph bounds apply.
    pub density_ok: bool,
    pub tw: f64,
    pub td: f64,
    pub genus: f64,
    pub hadwiger: f64,
}

/// Piecewise Hadwiger estimate for `G(n, p)`. In the dense piece `log₂ n` is
/// floored at 1 so tiny `n` stays finite.
pub fn hadwiger_estimate(n: f64, p: f64, r_h: f64, c_h: f64) -> f64 {
    if p > 0.5 {
        n / (2.0 * n.log2().max(1.0).sqrt())
    } else if p >= c_h / n {
        let base_log = -(1.0 - p).ln();
        n / (2.0 * ((n * p).ln() / base_log).sqrt())
    } else {
        r_h * n.sqrt()
    }
}

/// Evaluates the main lower bound for all four parameters.
pub fn theorem_bound(input: &BoundFormulaInput) -> Result<TheoremPrediction> {
    let BoundFormulaInput {
        n,
        p,
        delta,
        c_big,
        c,
        r,
        r_h,
        c_h,
    } = *input;
    if delta < 1.0 {
        return Err(Error::Domain(format!("max degree {delta} is below 1")));
    }
    let n2p = n * n * p;
    if !(n2p > 1.0) {
        return Err(Error::Domain(format!("n^2 p = {n2p} must exceed 1")));
    }
    let big_l = 19200.0 * c_big * delta;
    let big_m = (96.0 * c_big * delta).powi(2) / n2p;
    let m = n2p / big_l;
    let q = -(-big_m).exp_m1();
    let branch = if delta <= (n2p * n2p.ln()).sqrt() {
        DeltaBranch::Random
    } else {
        DeltaBranch::Clique
    };
    let (tw, td, genus, hadwiger) = match branch {
        DeltaBranch::Clique => {
            let k = m.floor();
            let genus = ringel_youngs(k as usize) as f64;
            ((k - 1.0).max(0.0), k, genus, k)
        }
        DeltaBranch::Random => (
            r * m,
            r * m,
            r * m * m * q,
            hadwiger_estimate(m, q, r_h, c_h),
        ),
    };
    Ok(TheoremPrediction {
        n2p,
        big_l,
        big_m,
        m,
        q,
        branch,
        degree_ok: delta <= n2p / (9600.0 * c_big),
        density_ok: q * m >= c,
        tw,
        td,
        genus,
        hadwiger,
    })
}

/// Growth shapes of the four bounds (constants dropped).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shapes {
    pub tw: f64,
    pub td: f64,
    pub genus: f64,
    pub hadwiger: f64,
}

/// Shapes for a connected `H` of maximum degree `Δ`: `n²p/Δ` for treewidth
/// and treedepth, `min(n²p, (n²p/Δ)²)` for genus and the three-range
/// Hadwiger bound. `ln Δ` is floored at 1 so `Δ ≤ e` stays finite.
pub fn corollary_shapes(n: f64, p: f64, delta: f64) -> Result<Shapes> {
    let n2p = n * n * p;
    if !(n2p > 1.0) || delta < 1.0 {
        return Err(Error::Domain(format!(
            "need n^2 p > 1 and max degree >= 1, got {n2p} and {delta}"
        )));
    }
    let ratio = n2p / delta;
    let log_d = delta.ln().max(1.0);
    let hadwiger = if delta <= n2p.sqrt() {
        (n2p / log_d).sqrt()
    } else if delta <= (n2p * n2p.ln()).sqrt() {
        ratio / log_d.sqrt()
    } else {
        ratio
    };
    Ok(Shapes {
        tw: ratio,
        td: ratio,
        genus: n2p.min(ratio * ratio),
        hadwiger,
    })
}

/// Shapes for an `H` with a spanning forest with few low-degree vertices:
/// `min(n²p, n)`, `n²p` for genus and `√(n²p)` for the Hadwiger number.
pub fn few_leaves_shapes(n: f64, p: f64) -> Result<Shapes> {
    let n2p = n * n * p;
    if !(n2p > 1.0) {
        return Err(Error::Domain(format!("n^2 p = {n2p} must exceed 1")));
    }
    Ok(Shapes {
        tw: n2p.min(n),
        td: n2p.min(n),
        genus: n2p,
        hadwiger: n2p.sqrt(),
    })
}
