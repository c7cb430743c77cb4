//! Vertex-disjoint paths on exactly `k` vertices in a graph with a spanning
//! forest that has few vertices of degree at most one, and the minor built by
//! contracting those paths.

// negated comparisons below also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use crate::error::{Error, Result};
use crate::graph::{
    connected_components, contract_family, is_forest, spanning_forest, union_graphs, ClusterFamily,
    Graph, VertexSet,
};
use crate::params::{param_bounds, BoundsConfig, ParamBounds};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCover {
    /// Each path has exactly `k` vertices, consecutive ones adjacent.
    pub paths: Vec<Vec<usize>>,
    pub k: usize,
    /// Vertices of degree at most one in the spanning forest used.
    pub alpha: usize,
}

impl PathCover {
    /// Checks disjointness, path length, adjacency along paths and the
    /// count guarantee `|paths| ≥ n/k − α` for a host on `n` vertices.
    pub fn check(&self, h: &Graph) -> Result<()> {
        let mut seen = vec![false; h.n()];
        for (i, p) in self.paths.iter().enumerate() {
            if p.len() != self.k {
                return Err(Error::Contract(format!(
                    "path {i} has {} vertices, not {}",
                    p.len(),
                    self.k
                )));
            }
            for &v in p {
                if v >= h.n() {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        n: h.n(),
                    });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Contract(format!("vertex {v} is on two paths")));
                }
            }
            if let Some(w) = p.windows(2).find(|w| !h.has_edge(w[0], w[1])) {
                return Err(Error::Contract(format!("path {i} skips {}-{}", w[0], w[1])));
            }
        }
        let floor = h.n() as f64 / self.k as f64 - self.alpha as f64;
        if (self.paths.len() as f64) < floor {
            return Err(Error::Contract(format!(
                "{} paths, below n/k - alpha = {floor:.2}",
                self.paths.len()
            )));
        }
        Ok(())
    }

    pub fn family(&self, host_n: usize) -> Result<ClusterFamily> {
        ClusterFamily::new(
            host_n,
            self.paths
                .iter()
                .map(|p| VertexSet::new(p.clone()))
                .collect(),
        )
    }
}

/// Vertices of degree at most one.
pub fn low_degree_count(g: &Graph) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) <= 1).count()
}

/// Splits a forest into vertex-disjoint paths. Each tree is rooted at its
/// smallest vertex and every vertex continues the path of one child (the one
/// with the largest subtree, ties to the smaller id); the other children
/// start new paths. Paths run from top to bottom, so each ends at a vertex
/// without children and their number equals the count of such vertices.
pub fn tree_path_partition(forest: &Graph) -> Result<Vec<Vec<usize>>> {
    if !is_forest(forest) {
        return Err(Error::Cyclic);
    }
    let n = forest.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    for comp in connected_components(forest) {
        let root = comp.members()[0];
        parent[root] = root;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &w in forest.neighbors(v) {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    order.push(w);
                }
            }
        }
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != v {
            size[parent[v]] += size[v];
        }
    }
    // heavy child per vertex
    let mut next = vec![usize::MAX; n];
    for &v in &order {
        if parent[v] == v {
            continue;
        }
        let p = parent[v];
        let cur = next[p];
        if cur == usize::MAX || size[v] > size[cur] || (size[v] == size[cur] && v < cur) {
            next[p] = v;
        }
    }
    let mut paths = Vec::new();
    for &v in &order {
        let head = parent[v] == v || next[parent[v]] != v;
        if head {
            let mut path = vec![v];
            let mut u = v;
            while next[u] != usize::MAX {
                u = next[u];
                path.push(u);
            }
            paths.push(path);
        }
    }
    Ok(paths)
}

/// Cuts the paths of a spanning forest of `h` into as many consecutive
/// `k`-vertex pieces as fit.
pub fn k_path_cover(h: &Graph, k: usize) -> Result<PathCover> {
    if k == 0 {
        return Err(Error::Precondition(
            "path length k must be at least 1".into(),
        ));
    }
    let forest = spanning_forest(h);
    let alpha = low_degree_count(&forest);
    let paths = tree_path_partition(&forest)?
        .iter()
        .flat_map(|p| p.chunks_exact(k).map(<[usize]>::to_vec).collect::<Vec<_>>())
        .collect();
    Ok(PathCover { paths, k, alpha })
}

/// Smallest integer in `[2.9/(np), 3/(np)]`.
pub fn choose_k(n: usize, p: f64) -> Result<usize> {
    let np = n as f64 * p;
    if !(np > 0.0) {
        return Err(Error::Config(format!("need np > 0, got {np}")));
    }
    let lo = (2.9 / np).ceil();
    if lo > 3.0 / np || lo < 1.0 {
        return Err(Error::Config(format!(
            "no integer k in [{:.4}, {:.4}]; adjust p (np = {np:.4}) or set a k override",
            2.9 / np,
            3.0 / np
        )));
    }
    Ok(lo as usize)
}

#[derive(Debug, Clone, Default)]
pub struct IndepConfig {
    pub p: f64,
    pub k_override: Option<usize>,
    pub bounds: BoundsConfig,
}

#[derive(Debug, Clone)]
pub struct IndepOutcome {
    pub k: usize,
    pub cover: PathCover,
    /// Contraction of the paths in `H ∪ G`.
    pub meta: Graph,
    /// Probability that two given paths are joined by a random edge.
    pub q: f64,
    /// Whether `m·q ≥ 1.2`, the density the argument needs.
    pub mq_ok: bool,
    pub bounds: ParamBounds,
}

/// Covers `h` with `k`-vertex paths, contracts them in `h ∪ g` and bounds
/// the parameters of the result.
pub fn indep_pipeline(h: &Graph, g: &Graph, cfg: &IndepConfig) -> Result<IndepOutcome> {
    if h.n() != g.n() {
        return Err(Error::SizeMismatch {
            left: h.n(),
            right: g.n(),
        });
    }
    let k = match cfg.k_override {
        Some(k) => k,
        None => choose_k(h.n(), cfg.p)?,
    };
    let cover = k_path_cover(h, k)?;
    cover.check(h)?;
    let fam = cover.family(h.n())?;
    let r = union_graphs(h, g)?;
    fam.check_connected(&r)?;
    let meta = contract_family(&r, &fam)?;
    let q = -((k * k) as f64 * (-cfg.p).ln_1p()).exp_m1();
    let mq_ok = cover.paths.len() as f64 * q >= 1.2;
    let bounds = param_bounds(&meta, &cfg.bounds)?;
    Ok(IndepOutcome {
        k,
        cover,
        meta,
        q,
        mq_ok,
        bounds,
    })
}
