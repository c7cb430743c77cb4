//! Monte Carlo frequency checks for the constructions showing the lower
//! bounds cannot be improved in general. Each trial samples `G(n, p)` over a
//! fixed base graph and records which structural events hold.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{
    gen_caterpillar, gen_path_with_trees, gen_star_of_stars, gen_tree_forest, piece_ranges,
};
use crate::graph::{
    connected_components, contract_family, is_forest, union_graphs, ClusterFamily, Graph,
};
use crate::random::{sample_gnp, Seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    /// Star plus subcritical random graph; the event concerns `G(n, p)`
    /// alone, since adding a star keeps a graph with that structure planar.
    Ex1,
    /// Root joined to the centres of many small stars.
    Ex2,
    /// Caterpillar: a spine with `Δ−1` or `Δ−2` leaves per spine vertex.
    Ex3,
    /// A path with small pendant trees.
    Ex4,
    /// Disjoint small trees plus a very sparse random graph.
    ForestLemma,
}

impl FromStr for Example {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "1" | "ex1" => Example::Ex1,
            "2" | "ex2" => Example::Ex2,
            "3" | "ex3" => Example::Ex3,
            "4" | "ex4" => Example::Ex4,
            "forest-lemma" | "forest" => Example::ForestLemma,
            _ => return Err(Error::Config(format!("unknown example `{s}`"))),
        })
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Example::Ex1 => "1",
            Example::Ex2 => "2",
            Example::Ex3 => "3",
            Example::Ex4 => "4",
            Example::ForestLemma => "forest-lemma",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExampleParams {
    pub n: usize,
    pub p: f64,
    /// Maximum degree target (examples 3 and 4).
    pub delta: usize,
    /// Growth constant fixing piece counts and sizes (examples 2, 4 and the
    /// forest lemma).
    pub c: f64,
    /// Tree size for the forest lemma; derived from `n`, `p`, `c` if unset.
    pub x: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EventRate {
    pub name: &'static str,
    pub passes: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub example: Example,
    pub trials: usize,
    pub events: Vec<EventRate>,
    /// Trials in which every event held.
    pub all_passes: usize,
    /// Parameters outside the regime the construction is meant for.
    pub warnings: Vec<String>,
    /// Largest component of the forest part, over all trials.
    pub max_component: Option<usize>,
    pub mean_max_component: Option<f64>,
    /// `x·ln(n/x)`, the order the largest component should stay within.
    pub reference_size: Option<f64>,
    /// Treewidth upper bound certified whenever the main event holds.
    pub tw_witness: Option<usize>,
}

impl ValidationReport {
    pub fn rate(&self, name: &str) -> Option<f64> {
        self.events
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.passes as f64 / self.trials as f64)
    }

    pub fn all_rate(&self) -> f64 {
        self.all_passes as f64 / self.trials as f64
    }
}

/// Every component has at most as many edges as vertices.
pub fn at_most_one_cycle_each(g: &Graph) -> bool {
    let comps = connected_components(g);
    let mut which = vec![0; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c.members() {
            which[v] = i;
        }
    }
    let mut edges = vec![0usize; comps.len()];
    for (u, _) in g.edges() {
        edges[which[u]] += 1;
    }
    comps.iter().zip(&edges).all(|(c, &e)| e <= c.len())
}

fn largest_component(g: &Graph) -> usize {
    connected_components(g)
        .iter()
        .map(|c| c.len())
        .max()
        .unwrap_or(0)
}

/// Per-trial outcome: event flags plus an optional component size.
type Outcome = (Vec<bool>, Option<usize>);

type EventCheck = Box<dyn Fn(&Graph) -> Result<Outcome> + Sync>;

struct Setup {
    names: Vec<&'static str>,
    warnings: Vec<String>,
    reference_size: Option<f64>,
    tw_witness: Option<usize>,
    check: EventCheck,
}

fn regime_sparse(n: usize, p: f64, c: f64, warnings: &mut Vec<String>) {
    let nf = n as f64;
    if p > 1.0 / (c * nf) {
        warnings.push(format!("p = {p} exceeds 1/(cn) = {}", 1.0 / (c * nf)));
    }
    if nf * nf * p <= 1.0 {
        warnings.push(format!("n^2 p = {} is not above 1", nf * nf * p));
    }
}

fn setup(which: Example, pr: &ExampleParams) -> Result<Setup> {
    let ExampleParams { n, p, delta, c, x } = *pr;
    let nf = n as f64;
    let mut warnings = Vec::new();
    Ok(match which {
        Example::Ex1 => {
            if nf * p >= 1.0 {
                warnings.push(format!("np = {} is not below 1", nf * p));
            }
            Setup {
                names: vec!["unicyclic"],
                warnings,
                reference_size: None,
                tw_witness: None,
                check: Box::new(|g: &Graph| Ok((vec![at_most_one_cycle_each(g)], None))),
            }
        }
        Example::Ex2 => {
            regime_sparse(n, p, c, &mut warnings);
            let s = gen_star_of_stars(n, p, c)?;
            let leaves = s.leaves.clone();
            let root = s.root;
            let h = s.graph;
            Setup {
                names: vec!["forest-minus-root", "no-root-leaf-edge"],
                warnings,
                reference_size: None,
                tw_witness: Some(2),
                check: Box::new(move |g: &Graph| {
                    let r = union_graphs(&h, g)?;
                    let (rest, _) = r.without(&[root]);
                    let clean = !g.neighbors(root).iter().any(|&v| leaves.contains(v));
                    Ok((vec![is_forest(&rest), clean], None))
                }),
            }
        }
        Example::Ex3 => {
            if nf * p >= 1.0 {
                warnings.push(format!("np = {} is not below 1", nf * p));
            }
            let (_, leaves) = gen_caterpillar(n, delta)?;
            let spine = n - leaves.len();
            let members = leaves.into_vec();
            Setup {
                names: vec!["leaf-unicyclic"],
                warnings,
                reference_size: None,
                // tw(R[L]) ≤ 2, and the spine adds at most one each
                tw_witness: Some(2 + spine),
                // the base graph has no edges among leaves, so R[L] = G[L]
                check: Box::new(move |g: &Graph| {
                    Ok((vec![at_most_one_cycle_each(&g.induced(&members))], None))
                }),
            }
        }
        Example::Ex4 => {
            regime_sparse(n, p, c, &mut warnings);
            if delta < 3 {
                warnings.push(format!("max degree {delta} is below 3"));
            }
            let pw = gen_path_with_trees(n, delta, p, c)?;
            let xf = pw.x as f64;
            let path = pw.path.into_vec();
            let h = pw.graph;
            Setup {
                names: vec!["forest"],
                warnings,
                reference_size: Some(xf * (nf / xf).ln()),
                tw_witness: Some(path.len() + 1),
                check: Box::new(move |g: &Graph| {
                    let (rest, _) = union_graphs(&h, g)?.without(&path);
                    Ok((vec![is_forest(&rest)], Some(largest_component(&rest))))
                }),
            }
        }
        Example::ForestLemma => {
            let x = match x {
                Some(x) => x,
                None => piece_ranges(n, p, c)?.x,
            };
            let xf = x as f64;
            if nf * p * xf >= 1.0 {
                warnings.push(format!("npx = {} is not below 1", nf * p * xf));
            }
            let (h, trees) = gen_tree_forest(n, x)?;
            let fam = ClusterFamily::new(n, trees)?;
            let owner: Vec<usize> = fam
                .owner_map()
                .into_iter()
                .map(|o| o.expect("the trees cover every vertex"))
                .collect();
            Setup {
                names: vec![
                    "forest",
                    "no-edge-inside",
                    "at-most-one-between",
                    "contracted-forest",
                ],
                warnings,
                reference_size: Some(xf * (nf / xf).ln()),
                tw_witness: Some(1),
                check: Box::new(move |g: &Graph| {
                    let r = union_graphs(&h, g)?;
                    let mut inside = false;
                    let mut twice = false;
                    let mut pairs = HashSet::new();
                    for (u, v) in g.edges() {
                        let (a, b) = (owner[u], owner[v]);
                        if a == b {
                            inside = true;
                        } else if !pairs.insert((a.min(b), a.max(b))) {
                            twice = true;
                        }
                    }
                    let star = contract_family(&r, &fam)?;
                    Ok((
                        vec![is_forest(&r), !inside, !twice, is_forest(&star)],
                        Some(largest_component(&r)),
                    ))
                }),
            }
        }
    })
}

/// Runs `trials` independent samples of the given construction and counts
/// how often each event holds. Out-of-regime parameters only add warnings.
pub fn validate_example(
    which: Example,
    params: &ExampleParams,
    trials: usize,
    seed: Seed,
) -> Result<ValidationReport> {
    if trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let s = setup(which, params)?;
    let outcomes: Vec<Outcome> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let g = sample_gnp(params.n, params.p, seed.trial(i))?;
            (s.check)(&g).map_err(|e| Error::Trial {
                index: i,
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;
    let events = s
        .names
        .iter()
        .enumerate()
        .map(|(k, &name)| EventRate {
            name,
            passes: outcomes.iter().filter(|o| o.0[k]).count(),
        })
        .collect();
    let all_passes = outcomes.iter().filter(|o| o.0.iter().all(|&b| b)).count();
    let sizes: Vec<usize> = outcomes.iter().filter_map(|o| o.1).collect();
    Ok(ValidationReport {
        example: which,
        trials,
        events,
        all_passes,
        warnings: s.warnings,
        max_component: sizes.iter().copied().max(),
        mean_max_component: (!sizes.is_empty())
            .then(|| sizes.iter().sum::<usize>() as f64 / sizes.len() as f64),
        reference_size: s.reference_size,
        tw_witness: s.tw_witness,
    })
}
