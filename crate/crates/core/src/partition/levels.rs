//! Buckets clusters by size: level `i` holds sizes in `[2^{i−1}ℓ, 2^iℓ)`.

use super::PipelineParams;
use crate::error::{Error, Result};
use crate::graph::ClusterFamily;

/// How clusters of a level get chained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkRule {
    /// Large clusters: keep the fixed order, expect every consecutive pair
    /// to be joined.
    FixedOrder,
    /// Smaller clusters: search a long path in the cluster graph.
    LongestPath,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    /// 1-based level number.
    pub index: usize,
    /// Smallest admissible size `2^{i−1}ℓ`.
    pub lower: f64,
    /// Cluster indices ordered by smallest member.
    pub clusters: Vec<usize>,
    pub mass: usize,
    /// Activity threshold on `mass`.
    pub threshold: f64,
    pub active: bool,
    pub rule: LinkRule,
}

/// Activity threshold `max(80/(u p), n/(50 log₂(n²p)))` scaled by
/// `c_scale`.
pub fn level_threshold(lower: f64, params: &PipelineParams) -> f64 {
    let n = params.n as f64;
    let a = 80.0 / (lower * params.p);
    let b = n / (50.0 * params.n2p().log2());
    params.c_scale * a.max(b)
}

/// Assigns every cluster to its level. Clusters above the top window (only
/// possible through rounding of `ℓ`) join the top level.
pub fn dyadic_levels(fam: &ClusterFamily, params: &PipelineParams) -> Result<Vec<Level>> {
    if params.n2p() <= 1.0 {
        return Err(Error::Domain(format!(
            "n^2 p = {} leaves no room for levels",
            params.n2p()
        )));
    }
    let count = params.num_levels();
    let ell = params.ell;
    let mut levels: Vec<Level> = (1..=count)
        .map(|i| {
            let lower = ell * 2f64.powi(i as i32 - 1);
            Level {
                index: i,
                lower,
                clusters: Vec::new(),
                mass: 0,
                threshold: level_threshold(lower, params),
                active: false,
                rule: if 2f64.powi(i as i32) > params.n2p().powf(2.0 / 3.0) {
                    LinkRule::FixedOrder
                } else {
                    LinkRule::LongestPath
                },
            }
        })
        .collect();

    let mut order: Vec<usize> = (0..fam.len()).collect();
    order.sort_by_key(|&i| fam.clusters()[i].smallest());
    for i in order {
        let size = fam.clusters()[i].len();
        let s = size as f64;
        if s < ell {
            return Err(Error::Contract(format!(
                "cluster {i} has size {size} below the floor {ell}"
            )));
        }
        let mut lvl = 1;
        while lvl < count && s >= ell * 2f64.powi(lvl as i32) {
            lvl += 1;
        }
        let l = &mut levels[lvl - 1];
        l.clusters.push(i);
        l.mass += size;
    }
    for l in &mut levels {
        l.active = l.mass as f64 >= l.threshold && !l.clusters.is_empty();
    }
    Ok(levels)
}
