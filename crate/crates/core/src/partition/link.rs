//! Chaining the clusters of one level through edges that join consecutive
//! clusters.

use super::levels::LinkRule;
use crate::graph::{ClusterFamily, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkOutcome {
    /// Cluster indices; consecutive clusters are joined by a link edge.
    pub seq: Vec<usize>,
    pub target: usize,
    pub shortfall: bool,
}

/// Graph on the level's clusters (local indices) with an edge whenever some
/// link edge joins the two clusters.
fn cluster_graph(
    clusters: &[usize],
    fam: &ClusterFamily,
    owner: &[Option<usize>],
    links: &Graph,
) -> Graph {
    let mut local = std::collections::HashMap::with_capacity(clusters.len());
    for (i, &c) in clusters.iter().enumerate() {
        local.insert(c, i);
    }
    let mut edges = Vec::new();
    for (i, &c) in clusters.iter().enumerate() {
        for &v in fam.clusters()[c].members() {
            for &w in links.neighbors(v) {
                if let Some(&j) = owner[w].and_then(|o| local.get(&o)) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
    }
    Graph::from_edges(clusters.len(), edges).expect("cluster graph edges are valid")
}

/// Longest run `order[k..k+len]` whose consecutive entries are adjacent.
pub fn longest_linked_run(g: &Graph, order: &[usize]) -> Vec<usize> {
    let (mut best, mut start) = ((0, 0), 0);
    for k in 0..order.len() {
        if k > 0 && !g.has_edge(order[k - 1], order[k]) {
            start = k;
        }
        if k + 1 - start > best.1 - best.0 {
            best = (start, k + 1);
        }
    }
    order[best.0..best.1].to_vec()
}

/// Depth-first search from the lowest vertex (restarting at the lowest
/// unvisited one), neighbours in ascending order. Returns the deepest stack
/// seen, which is a path in `g`.
pub fn longest_dfs_path(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut best: Vec<usize> = Vec::new();
    let mut stack: Vec<(usize, usize)> = Vec::new();
    // stack[..low] is known to agree with best[..low]
    let mut low = 0;
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        stack.push((root, 0));
        if stack.len() > best.len() {
            best.truncate(low);
            best.push(root);
            low = 1;
        }
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, mut next) = stack[top];
            let nb = g.neighbors(v);
            while next < nb.len() && seen[nb[next]] {
                next += 1;
            }
            if next < nb.len() {
                let w = nb[next];
                stack[top].1 = next + 1;
                seen[w] = true;
                stack.push((w, 0));
                if stack.len() > best.len() {
                    best.truncate(low);
                    best.extend(stack[low..].iter().map(|&(u, _)| u));
                    low = stack.len();
                }
            } else {
                stack.pop();
                low = low.min(stack.len());
            }
        }
    }
    best
}

/// Chains the clusters of one level. `clusters` must be ordered by smallest
/// member. The target is every cluster for [`LinkRule::FixedOrder`] and a
/// fifth of them for [`LinkRule::LongestPath`]; falling short is reported,
/// not an error.
pub fn link_within_level(
    clusters: &[usize],
    rule: LinkRule,
    fam: &ClusterFamily,
    owner: &[Option<usize>],
    links: &Graph,
) -> LinkOutcome {
    let g = cluster_graph(clusters, fam, owner, links);
    let (local, target) = match rule {
        LinkRule::FixedOrder => {
            let order: Vec<usize> = (0..clusters.len()).collect();
            (longest_linked_run(&g, &order), clusters.len())
        }
        LinkRule::LongestPath => (longest_dfs_path(&g), clusters.len().div_ceil(5)),
    };
    LinkOutcome {
        shortfall: local.len() < target,
        seq: local.into_iter().map(|i| clusters[i]).collect(),
        target,
    }
}
