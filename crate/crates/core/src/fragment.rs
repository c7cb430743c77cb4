//! Splitting a connected bounded-degree graph into connected pieces of size
//! in `[ℓ, ℓΔ)` that cover all but fewer than `ℓ` vertices.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{ClusterFamily, Graph, VertexSet};

/// Cuts off deepest subtrees of a BFS tree (rooted at 0) as soon as they
/// reach `ell` vertices. Cluster order is the order of emission.
pub fn fragment(g: &Graph, ell: usize) -> Result<ClusterFamily> {
    if ell == 0 {
        return Err(Error::Precondition("ell must be at least 1".into()));
    }
    let n = g.n();
    if n == 0 || ell > n {
        // n ≤ ell−1 vertices are left over, which the coverage bound allows
        if n > 0 && !crate::graph::is_connected(g) {
            return Err(Error::Disconnected);
        }
        return Ok(ClusterFamily::empty(n));
    }

    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::from([0]);
    parent[0] = 0;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    if order.len() != n {
        return Err(Error::Disconnected);
    }

    let mut children = vec![Vec::new(); n];
    for &v in &order[1..] {
        children[parent[v]].push(v);
    }
    // deepest first; smallest id among equals
    order.sort_unstable_by(|&a, &b| depth[b].cmp(&depth[a]).then(a.cmp(&b)));

    let mut residual = vec![1usize; n];
    let mut removed = vec![false; n];
    let mut clusters = Vec::new();
    let mut stack = Vec::new();
    for &v in &order {
        residual[v] += children[v]
            .iter()
            .filter(|&&c| !removed[c])
            .map(|&c| residual[c])
            .sum::<usize>();
        if residual[v] >= ell {
            let mut members = Vec::with_capacity(residual[v]);
            stack.push(v);
            while let Some(u) = stack.pop() {
                removed[u] = true;
                members.push(u);
                stack.extend(children[u].iter().copied().filter(|&c| !removed[c]));
            }
            clusters.push(VertexSet::new(members));
        }
    }
    ClusterFamily::new(n, clusters)
}

/// Checks the three fragmentation guarantees: connected disjoint clusters,
/// every size in `[ℓ, ℓΔ)` (or `[ℓ, ∞)` when `Δ ≤ 1`), and at most `ℓ`
/// vertices uncovered.
pub fn check_fragment(g: &Graph, fam: &ClusterFamily, ell: usize) -> Result<()> {
    fam.check_connected(g)?;
    let d = g.max_degree();
    for (i, c) in fam.clusters().iter().enumerate() {
        let ok = c.len() >= ell && (d <= 1 || c.len() < ell * d);
        if !ok {
            return Err(Error::Contract(format!(
                "cluster {i} has size {} outside [{ell}, {ell}*{d})",
                c.len()
            )));
        }
    }
    if fam.covered() + ell < g.n() {
        return Err(Error::Contract(format!(
            "only {} of {} vertices covered",
            fam.covered(),
            g.n()
        )));
    }
    Ok(())
}
