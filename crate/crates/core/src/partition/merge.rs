//! Cutting the spliced chain into consecutive groups of the target size.

use crate::error::Result;
use crate::graph::{ClusterFamily, VertexSet};

#[derive(Debug, Clone, PartialEq)]
pub struct MergeOutcome {
    pub family: ClusterFamily,
    /// Vertices of the trailing group that stayed below `lower`.
    pub discarded: usize,
}

/// Greedy left-to-right grouping: a group closes as soon as it holds at
/// least `lower` vertices. The unfinished tail is dropped.
pub fn merge_sequence(seq: &[usize], fam: &ClusterFamily, lower: f64) -> Result<MergeOutcome> {
    let mut groups = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for &c in seq {
        current.extend_from_slice(fam.clusters()[c].members());
        if current.len() as f64 >= lower {
            groups.push(VertexSet::new(std::mem::take(&mut current)));
        }
    }
    Ok(MergeOutcome {
        family: ClusterFamily::new(fam.host_n(), groups)?,
        discarded: current.len(),
    })
}
