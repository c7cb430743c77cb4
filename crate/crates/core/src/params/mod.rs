//! Lower bounds on treewidth, treedepth, genus and Hadwiger number, exact
//! values for small graphs, and the closed-form predictions they are
//! compared against.

pub mod congestion;
pub mod exact;
pub mod formulas;
pub mod heuristic;

use std::fmt;

use crate::error::Result;
use crate::graph::{connected_components, ClusterFamily, Graph};
use crate::partition::longest_dfs_path;
use crate::random::Seed;

pub use congestion::congestion_treewidth_bound;
pub use exact::{
    hadwiger_exact, hadwiger_exact_small, hadwiger_exact_with, treedepth_exact, treewidth_exact,
};
pub use formulas::{
    corollary_shapes, few_leaves_shapes, theorem_bound, BoundFormulaInput, DeltaBranch, Shapes,
    TheoremPrediction,
};
pub use heuristic::{hadwiger_lower_bound, hadwiger_search, verify_clique_minor};

pub const DEFAULT_EFFORT: usize = 4;
pub const DEFAULT_EXACT_CAP: usize = 10;

/// Genus of `K_t`.
pub fn ringel_youngs(t: usize) -> usize {
    if t <= 4 {
        0
    } else {
        ((t - 3) * (t - 4)).div_ceil(12)
    }
}

/// Euler-formula bound summed over components on at least three vertices
/// (genus is additive over components).
pub fn euler_genus_bound(g: &Graph) -> usize {
    let mut comp_edges = Vec::new();
    let comps = connected_components(g);
    let mut which = vec![0; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c.members() {
            which[v] = i;
        }
        comp_edges.push(0i64);
    }
    for (u, _) in g.edges() {
        comp_edges[which[u]] += 1;
    }
    comps
        .iter()
        .zip(&comp_edges)
        .filter(|(c, _)| c.len() >= 3)
        .map(|(c, &e)| {
            let excess = e - 3 * c.len() as i64 + 6;
            if excess > 0 {
                (excess as usize).div_ceil(6)
            } else {
                0
            }
        })
        .sum()
}

/// `max(Euler bound, genus of K_h)` for a known clique minor size `h`.
pub fn genus_bound_from(g: &Graph, hadwiger_lb: usize) -> usize {
    euler_genus_bound(g).max(ringel_youngs(hadwiger_lb))
}

pub fn genus_lower_bound(g: &Graph) -> usize {
    let (h, _) = hadwiger_lower_bound(g, DEFAULT_EFFORT, Seed(0));
    genus_bound_from(g, h)
}

/// Where a bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    /// Clique-minor witness.
    Witness,
    /// Largest minimum degree over a contraction sequence.
    MinWidth,
    Congestion,
    /// Treedepth of a long path subgraph.
    Path,
    /// Treewidth bound plus one.
    TreewidthPlusOne,
    Euler,
    RingelYoungs,
    Trivial,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Witness => "witness",
            Method::MinWidth => "min-width",
            Method::Congestion => "congestion",
            Method::Path => "path",
            Method::TreewidthPlusOne => "tw+1",
            Method::Euler => "euler",
            Method::RingelYoungs => "ringel-youngs",
            Method::Trivial => "trivial",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamBounds {
    pub tw_lb: usize,
    pub td_lb: usize,
    pub genus_lb: usize,
    pub hadwiger_lb: usize,
    /// Branch sets of the clique minor behind `hadwiger_lb`.
    pub witness: Option<ClusterFamily>,
    pub tw_method: Method,
    pub td_method: Method,
    pub genus_method: Method,
    pub hadwiger_method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsConfig {
    /// Graphs up to this many vertices get exact values.
    pub exact_cap: usize,
    pub effort: usize,
    pub seed: Seed,
    pub congestion: bool,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            exact_cap: DEFAULT_EXACT_CAP,
            effort: DEFAULT_EFFORT,
            seed: Seed(0),
            congestion: true,
        }
    }
}

fn pick(cands: &[(usize, Method)]) -> (usize, Method) {
    cands
        .iter()
        .copied()
        .fold((0, Method::Trivial), |b, c| if c.0 > b.0 { c } else { b })
}

/// Best available lower bounds for all four parameters.
pub fn param_bounds(g: &Graph, cfg: &BoundsConfig) -> Result<ParamBounds> {
    let n = g.n();
    let (h_heur, fam, min_width) = hadwiger_search(g, cfg.effort, cfg.seed);
    let (hadwiger_lb, witness, hadwiger_method) =
        if n <= cfg.exact_cap.min(exact::HADWIGER_SEARCH_CAP) && n > 0 {
            let (h, fam) = hadwiger_exact_with(g, n, h_heur)?;
            (h, fam, Method::Exact)
        } else {
            (h_heur, fam, Method::Witness)
        };

    let (tw_lb, tw_method) = if n <= cfg.exact_cap.min(exact::TREEWIDTH_CAP) {
        (treewidth_exact(g)?, Method::Exact)
    } else {
        let cong = if cfg.congestion {
            congestion_treewidth_bound(g)
        } else {
            0
        };
        pick(&[
            (hadwiger_lb.saturating_sub(1), Method::Witness),
            (min_width, Method::MinWidth),
            (cong, Method::Congestion),
        ])
    };

    let (td_lb, td_method) = if n <= cfg.exact_cap.min(exact::TREEDEPTH_CAP) {
        (treedepth_exact(g)?, Method::Exact)
    } else {
        let path = longest_dfs_path(g).len();
        let path_td = (usize::BITS - path.leading_zeros()) as usize;
        pick(&[
            (hadwiger_lb, Method::Witness),
            (tw_lb + 1, Method::TreewidthPlusOne),
            (path_td, Method::Path),
        ])
    };

    let (genus_lb, genus_method) = pick(&[
        (euler_genus_bound(g), Method::Euler),
        (ringel_youngs(hadwiger_lb), Method::RingelYoungs),
    ]);

    Ok(ParamBounds {
        tw_lb,
        td_lb,
        genus_lb,
        hadwiger_lb,
        witness: (n > 0).then_some(witness),
        tw_method,
        td_method,
        genus_method,
        hadwiger_method,
    })
}
