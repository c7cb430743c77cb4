//! Exact treewidth, treedepth and Hadwiger number for small graphs, using
//! bitmask state.

use crate::error::{Error, Result};
use crate::graph::{ClusterFamily, Graph, VertexSet};

pub const TREEWIDTH_CAP: usize = 20;
pub const TREEDEPTH_CAP: usize = 14;
pub const HADWIGER_CAP: usize = 10;
/// Largest graph the branch-set search is run on by default.
pub const HADWIGER_SEARCH_CAP: usize = 12;

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect()
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        return Err(Error::OverCap { n: g.n(), cap });
    }
    Ok(())
}

/// Vertices reachable from `start` inside `allowed` (which must contain it).
fn reach(adj: &[u32], start: u32, allowed: u32) -> u32 {
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & allowed & !seen;
        seen |= frontier;
    }
    seen
}

fn neighborhood(adj: &[u32], set: u32) -> u32 {
    let mut out = 0;
    let mut s = set;
    while s != 0 {
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        out |= adj[v];
    }
    out & !set
}

/// Exact treewidth by dynamic programming over the set of already
/// eliminated vertices: eliminating `v` after `S` costs the number of
/// vertices outside `S ∪ {v}` reachable from `v` through `S`.
pub fn treewidth_exact(g: &Graph) -> Result<usize> {
    check_cap(g, TREEWIDTH_CAP)?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let adj = masks(g);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best = vec![u8::MAX; 1usize << n];
    best[0] = 0;
    for s in 1..=full {
        let mut rest = s;
        let mut b = u8::MAX;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            let before = s & !(1 << v);
            let prev = best[before as usize];
            if prev >= b {
                continue;
            }
            let comp = reach(&adj, 1 << v, before | (1 << v));
            let q = neighborhood(&adj, comp).count_ones() as u8;
            b = b.min(prev.max(q));
        }
        best[s as usize] = b;
    }
    Ok(best[full as usize] as usize)
}

/// Exact treedepth from the recursive definition, memoised over vertex
/// subsets.
pub fn treedepth_exact(g: &Graph) -> Result<usize> {
    check_cap(g, TREEDEPTH_CAP)?;
    let n = g.n();
    let adj = masks(g);
    let mut memo = vec![0u8; 1usize << n];
    let full = ((1u64 << n) - 1) as u32;
    Ok(td_rec(&adj, full, &mut memo) as usize)
}

fn td_rec(adj: &[u32], set: u32, memo: &mut [u8]) -> u8 {
    if set == 0 {
        return 0;
    }
    if set.count_ones() == 1 {
        return 1;
    }
    if memo[set as usize] != 0 {
        return memo[set as usize];
    }
    let low = set & set.wrapping_neg();
    let comp = reach(adj, low, set);
    let value = if comp != set {
        td_rec(adj, comp, memo).max(td_rec(adj, set & !comp, memo))
    } else {
        let mut best = u8::MAX;
        let mut rest = set;
        while rest != 0 {
            let v = rest & rest.wrapping_neg();
            rest &= rest - 1;
            best = best.min(1 + td_rec(adj, set & !v, memo));
        }
        best
    };
    memo[set as usize] = value;
    value
}

/// All nonempty vertex subsets inducing a connected subgraph.
fn connected_subsets(adj: &[u32]) -> Vec<u32> {
    let n = adj.len();
    let full = ((1u64 << n) - 1) as u32;
    (1..=full)
        .filter(|&s| reach(adj, s & s.wrapping_neg(), s) == s)
        .collect()
}

struct Search<'a> {
    adj: &'a [u32],
    /// Connected subsets grouped by lowest vertex.
    by_low: Vec<Vec<u32>>,
    chosen: Vec<u32>,
    /// `nbr[i]` = open neighbourhood of `chosen[i]`.
    nbr: Vec<u32>,
    n: usize,
}

impl Search<'_> {
    /// Tries to extend `chosen` to `k` sets; future sets have lowest vertex
    /// above `after` and avoid `used`.
    fn extend(&mut self, k: usize, after: usize, used: u32) -> bool {
        let need = k - self.chosen.len();
        if need == 0 {
            return true;
        }
        let above: u32 = if after + 1 >= self.n {
            0
        } else {
            (((1u64 << self.n) - 1) as u32) & !((1u32 << (after + 1)) - 1)
        };
        let avail = above & !used;
        if (avail.count_ones() as usize) < need || !self.room(avail, need) {
            return false;
        }
        let mut lows = avail;
        while lows != 0 {
            let v = lows.trailing_zeros() as usize;
            lows &= lows - 1;
            for i in 0..self.by_low[v].len() {
                let b = self.by_low[v][i];
                if b & !avail != 0 || !self.nbr.iter().all(|&nb| nb & b != 0) {
                    continue;
                }
                self.chosen.push(b);
                self.nbr.push(neighborhood(self.adj, b));
                let ok = self.extend(k, v, used | b);
                if ok {
                    return true;
                }
                self.chosen.pop();
                self.nbr.pop();
            }
        }
        false
    }

    /// Upper bound on how many more sets fit: each lies inside one component
    /// of the available vertices and must hit every chosen set's
    /// neighbourhood.
    fn room(&self, avail: u32, need: usize) -> bool {
        let mut left = avail;
        let mut total = 0;
        while left != 0 {
            let comp = reach(self.adj, left & left.wrapping_neg(), avail);
            left &= !comp;
            let cap = self
                .nbr
                .iter()
                .map(|&nb| (nb & comp).count_ones() as usize)
                .min()
                .unwrap_or(comp.count_ones() as usize);
            total += cap;
            if total >= need {
                return true;
            }
        }
        false
    }
}

/// Largest `k` with a `K_k` minor and its branch sets, by exhaustive search
/// over connected branch sets. `start` is a known achievable size (at least
/// one for nonempty graphs) to search upward from.
pub fn hadwiger_exact_with(g: &Graph, cap: usize, start: usize) -> Result<(usize, ClusterFamily)> {
    check_cap(g, cap.min(31))?;
    let n = g.n();
    if n == 0 {
        return Ok((0, ClusterFamily::empty(0)));
    }
    let adj = masks(g);
    let mut by_low = vec![Vec::new(); n];
    for s in connected_subsets(&adj) {
        by_low[s.trailing_zeros() as usize].push(s);
    }
    // small sets first finds witnesses sooner
    for v in &mut by_low {
        v.sort_by_key(|s| s.count_ones());
    }
    let mut search = Search {
        adj: &adj,
        by_low,
        chosen: Vec::new(),
        nbr: Vec::new(),
        n,
    };
    let edges = g.num_edges();
    let mut best: Vec<u32> = vec![1];
    let mut k = start.max(1);
    loop {
        if k > n || k * (k - 1) / 2 > edges {
            break;
        }
        search.chosen.clear();
        search.nbr.clear();
        let found = (0..n).any(|v| {
            let sets = search.by_low[v].clone();
            sets.into_iter().any(|b| {
                search.chosen = vec![b];
                search.nbr = vec![neighborhood(&adj, b)];
                search.extend(k, v, b)
            })
        });
        if !found {
            break;
        }
        best = search.chosen.clone();
        k += 1;
    }
    let fam = ClusterFamily::new(
        n,
        best.iter()
            .map(|&m| VertexSet::new((0..n).filter(|&v| m >> v & 1 == 1).collect()))
            .collect(),
    )?;
    Ok((fam.len(), fam))
}

pub fn hadwiger_exact(g: &Graph, cap: usize) -> Result<usize> {
    hadwiger_exact_with(g, cap, 1).map(|(k, _)| k)
}

/// Exact Hadwiger number for graphs on at most ten vertices.
pub fn hadwiger_exact_small(g: &Graph) -> Result<usize> {
    hadwiger_exact(g, HADWIGER_CAP)
}
