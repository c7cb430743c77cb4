//! Splicing the per-level chains into one chain.
//!
//! Each chain keeps a block from its start and a block from its end, each
//! holding at least a tenth of its mass. Consecutive chains are joined by an
//! edge from the tail block of one to the head block of the next; whatever
//! lies between the chosen endpoints is kept, which is always at least four
//! fifths of the chain.

use crate::graph::{ClusterFamily, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub level: usize,
    /// Cluster indices, consecutive ones joined.
    pub seq: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConcatOutcome {
    pub sequence: Vec<usize>,
    pub kept_mass: usize,
    /// Mass of all input chains.
    pub linked_mass: usize,
    pub seam_failures: usize,
    /// Levels whose head block reaches past the start of the tail block.
    pub overlapping_blocks: Vec<usize>,
    /// Per kept chain: (mass kept, chain mass).
    pub ledger: Vec<(usize, usize)>,
}

/// `(a, b)`: smallest head end and largest tail start (0-based) whose blocks
/// hold at least a tenth of the chain mass.
pub fn block_bounds(sizes: &[usize]) -> (usize, usize) {
    let total: usize = sizes.iter().sum();
    // 10·mass ≥ total avoids rounding
    let mut acc = 0;
    let mut a = sizes.len() - 1;
    for (k, &s) in sizes.iter().enumerate() {
        acc += s;
        if 10 * acc >= total {
            a = k;
            break;
        }
    }
    acc = 0;
    let mut b = 0;
    for (k, &s) in sizes.iter().enumerate().rev() {
        acc += s;
        if 10 * acc >= total {
            b = k;
            break;
        }
    }
    (a, b)
}

struct Prepared<'a> {
    seq: &'a [usize],
    prefix: Vec<usize>,
    head_end: usize,
    tail_start: usize,
}

impl Prepared<'_> {
    fn mass(&self, lo: usize, hi: usize) -> usize {
        self.prefix[hi + 1] - self.prefix[lo]
    }
    fn len(&self) -> usize {
        self.seq.len()
    }
}

/// Best seam between `left` (position `β ≥ tail_start`) and `right`
/// (position `α ≤ head_end`): maximal kept mass, then smallest `(β, α)`.
fn best_seam(
    left: &Prepared,
    right: &Prepared,
    fam: &ClusterFamily,
    owner: &[Option<usize>],
    links: &Graph,
) -> Option<(usize, usize)> {
    let mut pos = std::collections::HashMap::new();
    for k in 0..=right.head_end {
        pos.insert(right.seq[k], k);
    }
    let mut best: Option<(usize, usize, usize)> = None;
    for beta in left.tail_start..left.len() {
        for &v in fam.clusters()[left.seq[beta]].members() {
            for &w in links.neighbors(v) {
                let Some(&alpha) = owner[w].and_then(|c| pos.get(&c)) else {
                    continue;
                };
                let kept = left.mass(0, beta) + right.mass(alpha, right.len() - 1);
                let better = match best {
                    None => true,
                    Some((k, b, a)) => kept > k || (kept == k && (beta, alpha) < (b, a)),
                };
                if better {
                    best = Some((kept, beta, alpha));
                }
            }
        }
    }
    best.map(|(_, b, a)| (b, a))
}

/// Joins the chains in level order. A seam with no joining edge splits the
/// result; the heaviest connected stretch is returned and the failure
/// counted.
pub fn concatenate_levels(
    lines: &[Line],
    fam: &ClusterFamily,
    owner: &[Option<usize>],
    links: &Graph,
) -> ConcatOutcome {
    let lines: Vec<&Line> = lines.iter().filter(|l| !l.seq.is_empty()).collect();
    if lines.is_empty() {
        return ConcatOutcome::default();
    }
    let mut out = ConcatOutcome::default();
    let prepared: Vec<Prepared> = lines
        .iter()
        .map(|l| {
            let sizes: Vec<usize> = l.seq.iter().map(|&c| fam.clusters()[c].len()).collect();
            let mut prefix = vec![0];
            for s in &sizes {
                prefix.push(prefix.last().unwrap() + s);
            }
            let (a, b) = block_bounds(&sizes);
            if a >= b {
                out.overlapping_blocks.push(l.level);
            }
            Prepared {
                seq: &l.seq,
                prefix,
                head_end: a.min(b),
                tail_start: a.max(b),
            }
        })
        .collect();
    out.linked_mass = prepared.iter().map(|p| p.mass(0, p.len() - 1)).sum();

    let t = prepared.len();
    let mut start = vec![0usize; t];
    let mut end: Vec<usize> = prepared.iter().map(|p| p.len() - 1).collect();
    let mut joined = vec![false; t.saturating_sub(1)];
    for j in 0..t.saturating_sub(1) {
        match best_seam(&prepared[j], &prepared[j + 1], fam, owner, links) {
            Some((beta, alpha)) => {
                end[j] = beta;
                start[j + 1] = alpha;
                joined[j] = true;
            }
            None => out.seam_failures += 1,
        }
    }

    // stretches of chains joined by seams; keep the heaviest
    let mut best: Option<(usize, usize, usize)> = None;
    let mut s = 0;
    for j in 0..t {
        if !joined.get(j).copied().unwrap_or(false) {
            let mass: usize = (s..=j).map(|k| prepared[k].mass(start[k], end[k])).sum();
            if best.is_none_or(|(m, _, _)| mass > m) {
                best = Some((mass, s, j));
            }
            s = j + 1;
        }
    }
    let (mass, lo, hi) = best.expect("at least one chain");
    for k in lo..=hi {
        let p = &prepared[k];
        out.sequence.extend_from_slice(&p.seq[start[k]..=end[k]]);
        let kept = p.mass(start[k], end[k]);
        let total = p.mass(0, p.len() - 1);
        assert!(5 * kept >= 4 * total, "splice kept {kept} of {total}");
        out.ledger.push((kept, total));
    }
    out.kept_mass = mass;
    out
}
