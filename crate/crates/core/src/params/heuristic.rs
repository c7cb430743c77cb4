//! Greedy contraction: clique minors with verified branch sets, and the
//! minor-min-width treewidth bound that falls out of the same process.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{ClusterFamily, Graph, VertexSet};
use crate::random::Seed;

/// Outcome of one contraction run.
#[derive(Debug, Clone)]
pub struct ContractionRun {
    /// Branch sets of the final complete graph.
    pub branch_sets: Vec<Vec<usize>>,
    /// Largest minimum degree seen along the way.
    pub min_width: usize,
}

/// Repeatedly takes a branch set of minimum degree: isolated ones are
/// dropped, others are merged into the neighbour sharing the fewest
/// neighbours with them. Stops once the branch sets form a clique.
/// Ties are broken at random.
pub fn contraction_run(g: &Graph, seed: Seed) -> ContractionRun {
    let n = g.n();
    if n == 0 {
        return ContractionRun {
            branch_sets: Vec::new(),
            min_width: 0,
        };
    }
    let mut rng = seed.rng();
    let mut adj: Vec<HashSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let key: Vec<u64> = (0..n).map(|_| rng.gen()).collect();
    // (degree, tie key, vertex)
    let mut queue: BTreeSet<(usize, u64, usize)> =
        (0..n).map(|v| (adj[v].len(), key[v], v)).collect();
    let mut alive = n;
    let mut edges = g.num_edges();
    let mut min_width = 0;

    while alive > 1 && 2 * edges != alive * (alive - 1) {
        let &(deg, k, v) = queue.iter().next().expect("alive vertices are queued");
        queue.remove(&(deg, k, v));
        min_width = min_width.max(deg);
        alive -= 1;
        if deg == 0 {
            members[v].clear();
            continue;
        }
        // sorted so tie-break draws do not depend on hash order
        let mut nv: Vec<usize> = adj[v].iter().copied().collect();
        nv.sort_unstable();
        let mut best = None;
        for &u in &nv {
            let common = if adj[u].len() < nv.len() {
                adj[u].iter().filter(|w| adj[v].contains(w)).count()
            } else {
                nv.iter().filter(|w| adj[u].contains(w)).count()
            };
            let cand = (common, rng.gen::<u64>(), u);
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
            }
        }
        let (common, _, u) = best.expect("positive degree");
        // v's edges vanish; those to u's non-neighbours come back on u
        edges -= deg;
        edges += deg - 1 - common;
        let touched: Vec<usize> = nv.iter().copied().filter(|&w| w != u).collect();
        for &w in &nv {
            queue.remove(&(adj[w].len(), key[w], w));
            adj[w].remove(&v);
        }
        for &w in &touched {
            if adj[u].insert(w) {
                adj[w].insert(u);
            }
        }
        for &w in &nv {
            queue.insert((adj[w].len(), key[w], w));
        }
        adj[v].clear();
        let moved = std::mem::take(&mut members[v]);
        members[u].extend(moved);
    }
    // the final clique is itself a minor
    min_width = min_width.max(alive - 1);
    let branch_sets = queue
        .iter()
        .map(|&(_, _, v)| {
            let mut m = members[v].clone();
            m.sort_unstable();
            m
        })
        .collect();
    ContractionRun {
        branch_sets,
        min_width,
    }
}

/// Checks that `sets` are disjoint connected vertex sets of `g` joined
/// pairwise by edges.
pub fn verify_clique_minor(g: &Graph, sets: &[Vec<usize>]) -> Result<ClusterFamily> {
    let fam = ClusterFamily::new(
        g.n(),
        sets.iter().map(|s| VertexSet::new(s.clone())).collect(),
    )?;
    fam.check_connected(g)?;
    let k = fam.len();
    let owner = fam.owner_map();
    let mut joined = vec![false; k * k];
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (owner[u], owner[v]) {
            joined[a * k + b] = true;
            joined[b * k + a] = true;
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            if !joined[a * k + b] {
                return Err(Error::Contract(format!(
                    "branch sets {a} and {b} are not joined"
                )));
            }
        }
    }
    Ok(fam)
}

/// Largest clique minor found over `effort` randomized contraction runs,
/// with its verified branch sets. Also returns the best minor-min-width.
pub fn hadwiger_search(g: &Graph, effort: usize, seed: Seed) -> (usize, ClusterFamily, usize) {
    let mut best = (0, ClusterFamily::empty(g.n()), 0);
    for i in 0..effort.max(1) {
        let run = contraction_run(g, seed.derive(i as u64));
        best.2 = best.2.max(run.min_width);
        if run.branch_sets.len() > best.0 {
            // a failed check would be a bug; the bound is only reported when verified
            let fam = verify_clique_minor(g, &run.branch_sets)
                .expect("contraction produces a valid clique minor");
            best.0 = fam.len();
            best.1 = fam;
        }
    }
    best
}

/// Lower bound on the Hadwiger number with a verified witness.
pub fn hadwiger_lower_bound(g: &Graph, effort: usize, seed: Seed) -> (usize, ClusterFamily) {
    let (h, fam, _) = hadwiger_search(g, effort, seed);
    (h, fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_bounded_degree_tree, gen_path, gen_star};
    use crate::random::sample_gnp;

    #[test]
    fn complete_graph_needs_no_contraction() {
        for t in 1..8 {
            let (h, fam) = hadwiger_lower_bound(&Graph::complete(t), 2, Seed(1));
            assert_eq!(h, t);
            assert!(fam.clusters().iter().all(|c| c.len() == 1));
        }
    }

    #[test]
    fn forests_give_two() {
        assert_eq!(hadwiger_lower_bound(&gen_path(10), 3, Seed(0)).0, 2);
        assert_eq!(hadwiger_lower_bound(&gen_star(7), 3, Seed(0)).0, 2);
        let t = gen_bounded_degree_tree(200, 4, Seed(3)).unwrap();
        assert_eq!(hadwiger_lower_bound(&t, 3, Seed(0)).0, 2);
        let two = Graph::from_edges(5, [(0, 1)]).unwrap();
        assert_eq!(hadwiger_lower_bound(&two, 1, Seed(0)).0, 2);
    }

    #[test]
    fn edgeless_gives_one() {
        assert_eq!(hadwiger_lower_bound(&Graph::empty(4), 1, Seed(0)).0, 1);
        assert_eq!(hadwiger_lower_bound(&Graph::empty(0), 1, Seed(0)).0, 0);
    }

    #[test]
    fn petersen_reaches_five() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        let g = Graph::from_edges(10, e).unwrap();
        assert_eq!(hadwiger_lower_bound(&g, 50, Seed(7)).0, 5);
    }

    #[test]
    fn cycle_min_width_two() {
        let (h, _, mw) = hadwiger_search(&Graph::cycle(9), 2, Seed(0));
        assert_eq!(h, 3);
        assert_eq!(mw, 2);
    }

    #[test]
    fn witnesses_verify_on_random_graphs() {
        for s in 0..40 {
            let g = sample_gnp(80, 0.08, Seed(s)).unwrap();
            let (h, fam) = hadwiger_lower_bound(&g, 3, Seed(s + 100));
            assert_eq!(h, fam.len());
            let sets: Vec<Vec<usize>> = fam
                .clusters()
                .iter()
                .map(|c| c.members().to_vec())
                .collect();
            verify_clique_minor(&g, &sets).unwrap();
        }
    }

    #[test]
    fn verifier_rejects_unjoined_sets() {
        let g = gen_path(4);
        assert!(verify_clique_minor(&g, &[vec![0], vec![3]]).is_err());
        assert!(verify_clique_minor(&g, &[vec![0, 2], vec![1]]).is_err());
        assert!(verify_clique_minor(&g, &[vec![0, 1], vec![2, 3]]).is_ok());
    }
}
