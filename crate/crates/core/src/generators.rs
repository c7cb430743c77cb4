//! Base graphs: paths, stars, random bounded-degree trees and the
//! tree-like constructions used to show the degree hypotheses are needed.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::random::Seed;

pub fn gen_path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
}

/// `K_{1,n−1}` centred at vertex 0.
pub fn gen_star(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (0, i))).expect("star edges are valid")
}

/// Random tree in which vertex `i` attaches to a uniformly chosen earlier
/// vertex whose degree is still below `max_deg`.
pub fn gen_bounded_degree_tree(n: usize, max_deg: usize, seed: Seed) -> Result<Graph> {
    if max_deg < 2 && n > 2 {
        return Err(Error::Construction(format!(
            "a tree on {n} vertices needs maximum degree at least 2"
        )));
    }
    let mut rng = seed.rng();
    let mut degree = vec![0usize; n];
    let mut open: Vec<usize> = Vec::with_capacity(n);
    let mut slot = vec![usize::MAX; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n > 0 {
        open.push(0);
        slot[0] = 0;
    }
    for v in 1..n {
        let u = open[rng.gen_range(0..open.len())];
        edges.push((u, v));
        for w in [u, v] {
            degree[w] += 1;
        }
        if degree[u] == max_deg {
            let i = slot[u];
            let last = *open.last().unwrap();
            open.swap_remove(i);
            if last != u {
                slot[last] = i;
            }
        }
        if degree[v] < max_deg {
            slot[v] = open.len();
            open.push(v);
        }
    }
    Graph::from_edges(n, edges)
}

/// Spine on `⌈n/Δ⌉` vertices, each carrying `Δ−1` or `Δ−2` leaves. Returns
/// the graph and the leaf set. Spine vertices are `0..spine`.
pub fn gen_caterpillar(n: usize, max_deg: usize) -> Result<(Graph, VertexSet)> {
    if max_deg < 3 || n < max_deg {
        return Err(Error::Construction(format!(
            "caterpillar needs n >= delta >= 3 (n = {n}, delta = {max_deg})"
        )));
    }
    let spine = n.div_ceil(max_deg);
    let leaves = n - spine;
    let (lo, hi) = (spine * (max_deg - 2), spine * (max_deg - 1));
    if leaves < lo || leaves > hi {
        return Err(Error::Construction(format!(
            "{leaves} leaves cannot be spread as {}-or-{} per spine vertex over {spine} spine vertices",
            max_deg - 2,
            max_deg - 1
        )));
    }
    // the first `extra` spine vertices take Δ−1 leaves, the rest Δ−2
    let extra = leaves - lo;
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|i| (i - 1, i)).collect();
    let mut next = spine;
    for s in 0..spine {
        let k = if s < extra { max_deg - 1 } else { max_deg - 2 };
        for _ in 0..k {
            edges.push((s, next));
            next += 1;
        }
    }
    debug_assert_eq!(next, n);
    Ok((
        Graph::from_edges(n, edges)?,
        VertexSet::new((spine..n).collect()),
    ))
}

/// Splits `total` into `parts` near-equal positive sizes (larger ones first).
fn balanced(total: usize, parts: usize) -> Vec<usize> {
    let (q, r) = (total / parts, total % parts);
    (0..parts).map(|i| q + usize::from(i < r)).collect()
}

/// Admissible ranges for the number of pieces `t` and the piece-size cap `x`
/// given a growth constant `c`: `t ∈ [c n²p/2, c n²p]`, `x ∈ [2/(cnp), 3/(cnp)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PieceRanges {
    pub t_lo: usize,
    pub t_hi: usize,
    pub x: usize,
}

pub fn piece_ranges(n: usize, p: f64, c: f64) -> Result<PieceRanges> {
    if !(p > 0.0 && c > 0.0) {
        return Err(Error::Construction("need p > 0 and c > 0".into()));
    }
    let nf = n as f64;
    let big = c * nf * nf * p;
    let small = c * nf * p;
    let t_lo = (big / 2.0).ceil() as usize;
    let t_hi = big.floor() as usize;
    if t_lo > t_hi {
        return Err(Error::Construction(format!(
            "no integer t with c n^2 p / 2 <= t <= c n^2 p (c n^2 p = {big})"
        )));
    }
    let x = (2.0 / small).ceil() as usize;
    if x as f64 > 3.0 / small {
        return Err(Error::Construction(format!(
            "no integer x with 2/(cnp) <= x <= 3/(cnp) (cnp = {small})"
        )));
    }
    Ok(PieceRanges { t_lo, t_hi, x })
}

#[derive(Debug, Clone)]
pub struct StarOfStars {
    pub graph: Graph,
    pub root: usize,
    /// Each star's vertex set; its smallest id is the centre.
    pub stars: Vec<VertexSet>,
    /// Leaves of the whole tree.
    pub leaves: VertexSet,
}

/// Root 0 joined to the centres of `t` stars with at most `x` vertices each,
/// `1 + Σ|star| = n`. Star sizes are balanced.
pub fn star_of_stars(n: usize, t: usize, x: usize) -> Result<StarOfStars> {
    if t == 0 || n < 1 + t {
        return Err(Error::Construction(format!(
            "need t >= 1 and n >= 1 + t (n = {n}, t = {t})"
        )));
    }
    if (n - 1) > t.saturating_mul(x) {
        return Err(Error::Construction(format!(
            "n <= 1 + x t fails (n = {n}, x = {x}, t = {t})"
        )));
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut stars = Vec::with_capacity(t);
    let mut next = 1;
    for size in balanced(n - 1, t) {
        let centre = next;
        edges.push((0, centre));
        for leaf in centre + 1..centre + size {
            edges.push((centre, leaf));
        }
        stars.push(VertexSet::new((centre..centre + size).collect()));
        next += size;
    }
    let graph = Graph::from_edges(n, edges)?;
    let leaves = VertexSet::new((0..n).filter(|&v| graph.degree(v) == 1).collect());
    Ok(StarOfStars {
        graph,
        root: 0,
        stars,
        leaves,
    })
}

/// Star-of-stars with `t` taken maximal in its admissible range and `x`
/// minimal.
pub fn gen_star_of_stars(n: usize, p: f64, c: f64) -> Result<StarOfStars> {
    let r = piece_ranges(n, p, c)?;
    let t = r.t_hi.min(n.saturating_sub(1));
    if t < r.t_lo {
        return Err(Error::Construction(format!(
            "t <= n - 1 leaves no t >= c n^2 p / 2 = {}",
            r.t_lo
        )));
    }
    star_of_stars(n, t, r.x)
}

/// Heap-shaped binary tree on ids `start..start+size` (maximum degree 3).
fn heap_tree(start: usize, size: usize, edges: &mut Vec<(usize, usize)>) {
    for j in 1..size {
        edges.push((start + (j - 1) / 2, start + j));
    }
}

/// Rule for the number of path vertices in [`path_with_trees`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpineRule {
    /// `⌈t/Δ⌉` path vertices; feasible only when `t ≤ (Δ−2)⌈t/Δ⌉`.
    Literal,
    /// `⌈t/(Δ−2)⌉` path vertices, always enough room for the trees.
    Capacity,
}

#[derive(Debug, Clone)]
pub struct PathWithTrees {
    pub graph: Graph,
    /// Path vertices `0..len`.
    pub path: VertexSet,
    pub trees: Vec<VertexSet>,
    pub x: usize,
}

/// A path with `t` pendant binary trees of at most `x` vertices each, at most
/// `Δ−2` trees per path vertex, each tree hooked by one of its leaves.
pub fn path_with_trees(
    n: usize,
    t: usize,
    x: usize,
    max_deg: usize,
    rule: SpineRule,
) -> Result<PathWithTrees> {
    if max_deg < 3 || t == 0 {
        return Err(Error::Construction(format!(
            "need delta >= 3 and t >= 1 (delta = {max_deg}, t = {t})"
        )));
    }
    let per = max_deg - 2;
    let len = match rule {
        SpineRule::Literal => t.div_ceil(max_deg),
        SpineRule::Capacity => t.div_ceil(per),
    };
    if t > len * per {
        return Err(Error::Construction(format!(
            "{t} trees exceed the per-vertex capacity {per} of a {len}-vertex path"
        )));
    }
    if n < len + t || n - len > t.saturating_mul(x) {
        return Err(Error::Construction(format!(
            "{t} trees of 1..={x} vertices cannot fill {} non-path vertices",
            n.saturating_sub(len)
        )));
    }
    let mut edges: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
    let mut trees = Vec::with_capacity(t);
    let mut next = len;
    for (i, size) in balanced(n - len, t).into_iter().enumerate() {
        heap_tree(next, size, &mut edges);
        // last heap vertex is a leaf (or the lone vertex)
        edges.push((i / per, next + size - 1));
        trees.push(VertexSet::new((next..next + size).collect()));
        next += size;
    }
    Ok(PathWithTrees {
        graph: Graph::from_edges(n, edges)?,
        path: VertexSet::new((0..len).collect()),
        trees,
        x,
    })
}

/// Path-with-trees with `t` maximal among feasible values and `x` minimal.
pub fn gen_path_with_trees(n: usize, max_deg: usize, p: f64, c: f64) -> Result<PathWithTrees> {
    if max_deg < 3 {
        return Err(Error::Construction("need delta >= 3".into()));
    }
    let r = piece_ranges(n, p, c)?;
    let per = max_deg - 2;
    let fits = |t: usize| t + t.div_ceil(per) <= n;
    let t = (r.t_lo..=r.t_hi).rev().find(|&t| fits(t)).ok_or_else(|| {
        Error::Construction(format!(
            "no t in [{}, {}] leaves room for one vertex per tree",
            r.t_lo, r.t_hi
        ))
    })?;
    path_with_trees(n, t, r.x, max_deg, SpineRule::Capacity)
}

/// Disjoint balanced binary trees on at most `x` vertices each, `⌈n/x⌉` of
/// them, covering all `n` vertices.
pub fn gen_tree_forest(n: usize, x: usize) -> Result<(Graph, Vec<VertexSet>)> {
    if x == 0 || n == 0 {
        return Err(Error::Construction("need n >= 1 and x >= 1".into()));
    }
    let t = n.div_ceil(x);
    let mut edges = Vec::with_capacity(n);
    let mut trees = Vec::with_capacity(t);
    let mut next = 0;
    for size in balanced(n, t) {
        heap_tree(next, size, &mut edges);
        trees.push(VertexSet::new((next..next + size).collect()));
        next += size;
    }
    Ok((Graph::from_edges(n, edges)?, trees))
}

/// `k_paths` disjoint paths of near-equal length on consecutive ids.
pub fn gen_path_bundle(n: usize, k_paths: usize) -> Result<Graph> {
    if k_paths == 0 || k_paths > n {
        return Err(Error::Construction(format!(
            "need 1 <= k_paths <= n (n = {n}, k_paths = {k_paths})"
        )));
    }
    let mut edges = Vec::with_capacity(n);
    let mut start = 0;
    for len in balanced(n, k_paths) {
        edges.extend((start + 1..start + len).map(|i| (i - 1, i)));
        start += len;
    }
    Graph::from_edges(n, edges)
}
