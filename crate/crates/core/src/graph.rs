//! Simple undirected graphs on dense vertex ids `0..n`, vertex sets, cluster
//! families, and the structural operations the rest of the crate builds on.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A simple undirected graph. Adjacency lists are sorted and duplicate-free,
/// and `u ∈ adj(v)` iff `v ∈ adj(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; self-loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        if n < 3 {
            return crate::generators::gen_path(n);
        }
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Checks the simplicity, symmetry and range invariants.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let mut count = 0;
        for (u, list) in self.adj.iter().enumerate() {
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::Contract(format!(
                        "adjacency of {u} not strictly sorted"
                    )));
                }
            }
            for &v in list {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if v == u {
                    return Err(Error::SelfLoop(u));
                }
                if self.adj[v].binary_search(&u).is_err() {
                    return Err(Error::Contract(format!("edge {u}-{v} not symmetric")));
                }
            }
            count += list.len();
        }
        if count != 2 * self.m {
            return Err(Error::Contract("edge count out of sync".into()));
        }
        Ok(())
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(vertices.len(), edges).expect("induced edges are valid")
    }

    /// Graph with the vertices in `removed` deleted; surviving vertices keep
    /// their relative order. Returns the graph and the surviving ids.
    pub fn without(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        (self.induced(&keep), keep)
    }
}

/// Sorted, duplicate-free list of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn smallest(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

/// Ordered collection of pairwise disjoint, nonempty vertex sets of a host
/// graph on `host_n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterFamily {
    clusters: Vec<VertexSet>,
    host_n: usize,
}

impl ClusterFamily {
    /// Checks range, nonemptiness and disjointness.
    pub fn new(host_n: usize, clusters: Vec<VertexSet>) -> Result<Self> {
        let mut owner = vec![usize::MAX; host_n];
        for (i, c) in clusters.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::EmptyCluster(i));
            }
            for &v in c.members() {
                if v >= host_n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        n: host_n,
                    });
                }
                if owner[v] != usize::MAX {
                    return Err(Error::OverlappingClusters {
                        vertex: v,
                        first: owner[v],
                        second: i,
                    });
                }
                owner[v] = i;
            }
        }
        Ok(ClusterFamily { clusters, host_n })
    }

    pub fn empty(host_n: usize) -> Self {
        ClusterFamily {
            clusters: Vec::new(),
            host_n,
        }
    }

    /// One singleton cluster per vertex.
    pub fn singletons(host_n: usize) -> Self {
        ClusterFamily {
            clusters: (0..host_n).map(|v| VertexSet(vec![v])).collect(),
            host_n,
        }
    }

    pub fn clusters(&self) -> &[VertexSet] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    /// Total number of covered vertices.
    pub fn covered(&self) -> usize {
        self.clusters.iter().map(VertexSet::len).sum()
    }

    pub fn min_size(&self) -> usize {
        self.clusters.iter().map(VertexSet::len).min().unwrap_or(0)
    }

    pub fn max_size(&self) -> usize {
        self.clusters.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// `owner[v]` is the index of the cluster containing `v`, if any.
    pub fn owner_map(&self) -> Vec<Option<usize>> {
        let mut owner = vec![None; self.host_n];
        for (i, c) in self.clusters.iter().enumerate() {
            for &v in c.members() {
                owner[v] = Some(i);
            }
        }
        owner
    }

    /// Checks that every cluster induces a connected subgraph of `g`.
    pub fn check_connected(&self, g: &Graph) -> Result<()> {
        if g.n() != self.host_n {
            return Err(Error::SizeMismatch {
                left: g.n(),
                right: self.host_n,
            });
        }
        let owner = self.owner_map();
        let mut seen = vec![false; g.n()];
        let mut queue = VecDeque::new();
        for (i, c) in self.clusters.iter().enumerate() {
            let start = c.members()[0];
            seen[start] = true;
            queue.push_back(start);
            let mut reached = 1;
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if !seen[w] && owner[w] == Some(i) {
                        seen[w] = true;
                        reached += 1;
                        queue.push_back(w);
                    }
                }
            }
            if reached != c.len() {
                return Err(Error::DisconnectedCluster(i));
            }
        }
        Ok(())
    }
}

/// Edge-set union of two graphs on the same vertex set.
pub fn union_graphs(a: &Graph, b: &Graph) -> Result<Graph> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let mut adj = Vec::with_capacity(a.n());
    let mut m = 0;
    for v in 0..a.n() {
        let (x, y) = (a.neighbors(v), b.neighbors(v));
        let mut merged = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() || j < y.len() {
            let next = match (x.get(i), y.get(j)) {
                (Some(&p), Some(&q)) if p == q => {
                    i += 1;
                    j += 1;
                    p
                }
                (Some(&p), Some(&q)) if p < q => {
                    i += 1;
                    p
                }
                (Some(_), Some(&q)) => {
                    j += 1;
                    q
                }
                (Some(&p), None) => {
                    i += 1;
                    p
                }
                (None, Some(&q)) => {
                    j += 1;
                    q
                }
                (None, None) => unreachable!(),
            };
            merged.push(next);
        }
        m += merged.len();
        adj.push(merged);
    }
    Ok(Graph { adj, m: m / 2 })
}

/// Connected components, each sorted, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        queue.push_back(s);
        let mut members = vec![s];
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(VertexSet::new(members));
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || connected_components(g).len() == 1
}

/// BFS spanning forest, each tree rooted at the smallest id of its component.
pub fn spanning_forest(g: &Graph) -> Graph {
    let mut seen = vec![false; g.n()];
    let mut edges = Vec::with_capacity(g.n());
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    edges.push((v, w));
                    queue.push_back(w);
                }
            }
        }
    }
    Graph::from_edges(g.n(), edges).expect("forest edges are valid")
}

/// Contracts every cluster of `fam` to a single vertex (vertex `i` of the
/// result is cluster `i`) and deletes uncovered vertices. Parallel edges are
/// collapsed and loops dropped.
pub fn contract_family(g: &Graph, fam: &ClusterFamily) -> Result<Graph> {
    if g.n() != fam.host_n() {
        return Err(Error::SizeMismatch {
            left: g.n(),
            right: fam.host_n(),
        });
    }
    let owner = fam.owner_map();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (owner[u], owner[v]) {
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    Graph::from_edges(fam.len(), edges)
}

pub fn is_forest(g: &Graph) -> bool {
    g.num_edges() + connected_components(g).len() == g.n()
}

/// Contracts `fam` and reports whether the result is a forest. Under the
/// preconditions (clusters induce trees, at most one edge between any two
/// clusters, clusters cover `V(g)`) this agrees with `is_forest(g)`.
pub fn lift_forest_check(g: &Graph, fam: &ClusterFamily) -> Result<bool> {
    if g.n() != fam.host_n() {
        return Err(Error::SizeMismatch {
            left: g.n(),
            right: fam.host_n(),
        });
    }
    let owner = fam.owner_map();
    if let Some(v) = owner.iter().position(Option::is_none) {
        return Err(Error::NonCover(v));
    }
    fam.check_connected(g).map_err(|e| match e {
        Error::DisconnectedCluster(i) => Error::NonTreeCluster(i),
        other => other,
    })?;
    let mut inside = vec![0usize; fam.len()];
    let mut between = Vec::new();
    for (u, v) in g.edges() {
        let (a, b) = (owner[u].unwrap(), owner[v].unwrap());
        if a == b {
            inside[a] += 1;
        } else {
            between.push((a.min(b), a.max(b)));
        }
    }
    for (i, c) in fam.clusters().iter().enumerate() {
        if inside[i] + 1 != c.len() {
            return Err(Error::NonTreeCluster(i));
        }
    }
    between.sort_unstable();
    if let Some(w) = between.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::MultiEdgePair(w[0].0, w[0].1));
    }
    Ok(is_forest(&contract_family(g, fam)?))
}
