//! Slow, independent reference computations used to cross-check the exact
//! routines. They work on adjacency bitmasks and share no code with the
//! library beyond `Graph` accessors.

#![allow(dead_code)]

use perturb_core::generators::gen_bounded_degree_tree;
use perturb_core::{Graph, Seed};
use rand::Rng;

pub fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// Treewidth as the best elimination order, simulating fill-in explicitly.
/// Depth-first over orders with branch-and-bound on the running width.
pub fn treewidth_by_orders(g: &Graph) -> usize {
    fn go(adj: &mut Vec<u32>, alive: u32, width: usize, best: &mut usize) {
        if width >= *best {
            return;
        }
        if alive == 0 {
            *best = width;
            return;
        }
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let nb = adj[v] & alive;
            let w = width.max(nb.count_ones() as usize);
            if w >= *best {
                continue;
            }
            let saved = adj.clone();
            // neighbours of v become a clique
            let mut it = nb;
            while it != 0 {
                let u = it.trailing_zeros() as usize;
                it &= it - 1;
                adj[u] |= nb & !(1 << u);
            }
            go(adj, alive & !(1 << v), w, best);
            *adj = saved;
        }
    }
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut adj = masks(g);
    let mut best = n; // never reached: width ≤ n − 1
    go(&mut adj, (1u32 << n) - 1, 0, &mut best);
    best
}

fn component_of(adj: &[u32], within: u32, start: usize) -> u32 {
    let mut comp = 1u32 << start;
    let mut frontier = comp;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & within & !comp;
        comp |= new;
        frontier |= new;
    }
    comp
}

/// Treedepth straight from the recursive definition: 1 for a single vertex,
/// the maximum over components, and `1 + min_v td(G − v)` for a connected
/// graph. No memoization.
pub fn treedepth_recursive(g: &Graph) -> usize {
    fn td(adj: &[u32], set: u32) -> usize {
        if set == 0 {
            return 0;
        }
        let first = set.trailing_zeros() as usize;
        let comp = component_of(adj, set, first);
        if comp != set {
            return td(adj, comp).max(td(adj, set & !comp));
        }
        if set.count_ones() == 1 {
            return 1;
        }
        let mut best = usize::MAX;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            best = best.min(1 + td(adj, set & !(1 << v)));
        }
        best
    }
    let n = g.n();
    if n == 0 {
        return 0;
    }
    td(&masks(g), (1u32 << n) - 1)
}

/// Hadwiger number by enumerating every assignment of vertices to blocks or
/// to "deleted" (restricted growth strings), keeping those whose blocks are
/// connected and pairwise adjacent.
pub fn hadwiger_by_partitions(g: &Graph) -> usize {
    fn go(adj: &[u32], v: usize, n: usize, blocks: &mut Vec<u32>, best: &mut usize) {
        if blocks.len() + (n - v) <= *best {
            return;
        }
        if v == n {
            let k = blocks.len();
            let connected = blocks
                .iter()
                .all(|&b| component_of(adj, b, b.trailing_zeros() as usize) == b);
            if !connected {
                return;
            }
            let touch = |a: u32, b: u32| {
                let mut it = a;
                while it != 0 {
                    let u = it.trailing_zeros() as usize;
                    it &= it - 1;
                    if adj[u] & b != 0 {
                        return true;
                    }
                }
                false
            };
            for i in 0..k {
                for j in i + 1..k {
                    if !touch(blocks[i], blocks[j]) {
                        return;
                    }
                }
            }
            *best = k;
            return;
        }
        // deleted
        go(adj, v + 1, n, blocks, best);
        for i in 0..blocks.len() {
            blocks[i] |= 1 << v;
            go(adj, v + 1, n, blocks, best);
            blocks[i] &= !(1 << v);
        }
        blocks.push(1 << v);
        go(adj, v + 1, n, blocks, best);
        blocks.pop();
    }
    let mut best = 0;
    go(&masks(g), 0, g.n(), &mut Vec::new(), &mut best);
    best
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, e).unwrap()
}

/// Connected graph of maximum degree at most `max_deg`: a random tree plus
/// extra edges wherever both endpoints have room.
pub fn connected_bounded(n: usize, max_deg: usize, extra: usize, seed: u64) -> Graph {
    let t = gen_bounded_degree_tree(n, max_deg, Seed(seed)).unwrap();
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut edges: Vec<(usize, usize)> = t.edges().collect();
    let mut rng = Seed(seed).derive(1).rng();
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && deg[u] < max_deg && deg[v] < max_deg && !t.has_edge(u, v) {
            deg[u] += 1;
            deg[v] += 1;
            edges.push((u, v));
        }
    }
    let g = Graph::from_edges(n, edges).unwrap();
    assert!(g.max_degree() <= max_deg);
    g
}
