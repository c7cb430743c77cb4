//! Merging fragmentation clusters of `H` into many large connected pieces of
//! `R₀ = H ∪ G₁` using the random edges of `G₁`, then contracting them.
//!
//! The run has four stages: bucket clusters by size ([`levels`]), chain
//! clusters inside each bucket ([`link`]), splice the chains into one line
//! ([`concat`]) and cut that line into groups of the target size
//! ([`merge`]). Every stage records what happened; success is decided only
//! by re-checking the output against the size window and count floor.

pub mod concat;
pub mod levels;
pub mod link;
pub mod merge;

use std::fmt;

use crate::error::{Error, Result};
use crate::fragment::fragment;
use crate::graph::{contract_family, is_connected, union_graphs, ClusterFamily, Graph};

pub use concat::{concatenate_levels, ConcatOutcome, Line};
pub use levels::{dyadic_levels, Level, LinkRule};
pub use link::{link_within_level, longest_dfs_path, longest_linked_run, LinkOutcome};
pub use merge::{merge_sequence, MergeOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Literal constants and hypotheses, checked up front.
    Strict,
    /// Same formulas with scale knobs, usable at desk-scale `n`.
    Relaxed,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Relaxed => "relaxed",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Mode::Strict),
            "relaxed" => Ok(Mode::Relaxed),
            _ => Err(Error::Config(format!("unknown mode `{s}`"))),
        }
    }
}

/// Which edges may join consecutive clusters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgesMode {
    RandomOnly,
    All,
}

impl fmt::Display for EdgesMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgesMode::RandomOnly => "random-only",
            EdgesMode::All => "all",
        })
    }
}

impl std::str::FromStr for EdgesMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random-only" => Ok(EdgesMode::RandomOnly),
            "all" => Ok(EdgesMode::All),
            _ => Err(Error::Config(format!("unknown edges mode `{s}`"))),
        }
    }
}

/// Scale knobs for relaxed runs. `None` falls back to the strict formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxedKnobs {
    pub ell: Option<f64>,
    /// Multiplier `a` of the window `[ℓa, 2ℓa]`; must be at least `Δ`.
    pub window_mult: Option<f64>,
    /// Factor applied to every level activity threshold.
    pub c_scale: f64,
    /// Fraction of `n` the spliced line is expected to cover.
    pub coverage: f64,
}

impl Default for RelaxedKnobs {
    fn default() -> Self {
        RelaxedKnobs {
            ell: None,
            window_mult: None,
            c_scale: 1e-3,
            coverage: 1.0 / 24.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineParams {
    pub mode: Mode,
    pub edges: EdgesMode,
    pub n: usize,
    /// Edge probability of the first-round graph `G₁`.
    pub p: f64,
    pub delta: usize,
    pub c: f64,
    pub c_prime: f64,
    /// Cluster floor (real); fragmentation uses `⌈ell⌉`.
    pub ell: f64,
    /// Window multiplier: groups have size in `[ell·dp, 2·ell·dp]`.
    pub delta_prime: f64,
    pub c_scale: f64,
    pub coverage: f64,
}

impl PipelineParams {
    /// Literal constants. Refuses configurations outside
    /// `0 < p ≤ 2/n`, `Δ ≤ n²p/(4800C′)`, `C′ ≥ C ≥ 8`.
    pub fn strict(
        n: usize,
        p: f64,
        delta: usize,
        c: f64,
        c_prime: f64,
        edges: EdgesMode,
    ) -> Result<Self> {
        let nf = n as f64;
        if !(p > 0.0 && p <= 2.0 / nf) {
            return Err(Error::Precondition(format!(
                "need 0 < p <= 2/n, got p = {p}"
            )));
        }
        if !(c >= 8.0 && c_prime >= c) {
            return Err(Error::Precondition(format!(
                "need C' >= C >= 8, got C = {c}, C' = {c_prime}"
            )));
        }
        let cap = nf * nf * p / (4800.0 * c_prime);
        if delta as f64 > cap {
            return Err(Error::Precondition(format!(
                "max degree {delta} exceeds n^2 p / (4800 C') = {cap:.4}"
            )));
        }
        Ok(PipelineParams {
            mode: Mode::Strict,
            edges,
            n,
            p,
            delta,
            c,
            c_prime,
            ell: 96.0 * c / (nf * p),
            delta_prime: c_prime * delta as f64 / c,
            c_scale: 1.0,
            coverage: 1.0 / 24.0,
        })
    }

    pub fn relaxed(
        n: usize,
        p: f64,
        delta: usize,
        c: f64,
        c_prime: f64,
        knobs: RelaxedKnobs,
        edges: EdgesMode,
    ) -> Result<Self> {
        crate::random::check_probability(p)?;
        if p == 0.0 {
            return Err(Error::Precondition("p must be positive".into()));
        }
        let nf = n as f64;
        let ell = knobs.ell.unwrap_or(96.0 * c / (nf * p));
        if !(ell >= 1.0 && ell.is_finite()) {
            return Err(Error::Precondition(format!(
                "cluster floor {ell} must be >= 1"
            )));
        }
        let delta_prime = knobs.window_mult.unwrap_or(c_prime * delta as f64 / c);
        if delta_prime < delta as f64 {
            return Err(Error::Precondition(format!(
                "window multiplier {delta_prime} is below the max degree {delta}"
            )));
        }
        if !(knobs.c_scale > 0.0 && knobs.coverage > 0.0 && knobs.coverage <= 1.0) {
            return Err(Error::Precondition(
                "c_scale must be positive and coverage in (0, 1]".into(),
            ));
        }
        Ok(PipelineParams {
            mode: Mode::Relaxed,
            edges,
            n,
            p,
            delta,
            c,
            c_prime,
            ell,
            delta_prime,
            c_scale: knobs.c_scale,
            coverage: knobs.coverage,
        })
    }

    pub fn ell_int(&self) -> usize {
        self.ell.ceil() as usize
    }

    pub fn n2p(&self) -> f64 {
        let nf = self.n as f64;
        nf * nf * self.p
    }

    /// Inclusive size window `[ℓΔ′, 2ℓΔ′]` of the merged groups.
    pub fn window(&self) -> (f64, f64) {
        let lo = self.ell * self.delta_prime;
        (lo, 2.0 * lo)
    }

    pub fn num_levels(&self) -> usize {
        (self.delta_prime.log2().ceil().max(1.0)) as usize
    }

    /// Minimum number of groups a successful run must produce (never below
    /// one).
    pub fn count_floor(&self) -> f64 {
        let floor = match self.mode {
            Mode::Strict => self.n2p() / (9600.0 * self.c_prime * self.delta as f64),
            Mode::Relaxed => {
                let (lo, _) = self.window();
                (self.coverage * self.n as f64 - lo) / (2.0 * lo)
            }
        };
        floor.max(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Levels,
    Link,
    Concat,
    Merge,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Levels => "S1",
            Stage::Link => "S2",
            Stage::Concat => "S3",
            Stage::Merge => "S4",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelReport {
    pub index: usize,
    pub clusters: usize,
    pub mass: usize,
    pub threshold: f64,
    pub active: bool,
    pub rule: LinkRule,
    pub linked: usize,
    pub target: usize,
    pub shortfall: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PipelineReport {
    pub fragments: usize,
    pub levels: Vec<LevelReport>,
    pub linked_mass: usize,
    /// Vertices in the spliced line.
    pub line_mass: usize,
    pub seam_failures: usize,
    /// Levels whose prefix and suffix blocks overlapped.
    pub overlapping_blocks: Vec<usize>,
    pub m: usize,
    pub min_size: usize,
    pub max_size: usize,
    pub discarded: usize,
    pub count_floor: f64,
    pub window: (f64, f64),
    /// Stages that fell short of their target, in order.
    pub flags: Vec<(Stage, String)>,
    /// The output clusters are disjoint and connected in `R₀`.
    pub minor_valid: bool,
    pub success: bool,
    pub fail_stage: Option<Stage>,
    pub reason: Option<String>,
}

impl PipelineReport {
    fn flag(&mut self, stage: Stage, msg: impl Into<String>) {
        self.flags.push((stage, msg.into()));
    }
}

/// Re-checks the output: disjoint, connected in `r0`, sizes inside the
/// window and at least the floor count.
pub fn verify_contract(r0: &Graph, fam: &ClusterFamily, params: &PipelineParams) -> Result<()> {
    let fam = ClusterFamily::new(r0.n(), fam.clusters().to_vec())?;
    fam.check_connected(r0)?;
    let (lo, hi) = params.window();
    for (i, c) in fam.clusters().iter().enumerate() {
        let s = c.len() as f64;
        if s < lo || s > hi {
            return Err(Error::Contract(format!(
                "group {i} has size {} outside [{lo:.3}, {hi:.3}]",
                c.len()
            )));
        }
    }
    let floor = params.count_floor();
    if (fam.len() as f64) < floor {
        return Err(Error::Contract(format!(
            "{} groups, below the floor {floor:.3}",
            fam.len()
        )));
    }
    Ok(())
}

/// Fragments `h`, then links, splices and merges the clusters using the
/// edges of `g1` (or of `H ∪ G₁`).
pub fn build_partition(
    h: &Graph,
    g1: &Graph,
    params: &PipelineParams,
) -> Result<(ClusterFamily, PipelineReport)> {
    if h.n() != g1.n() {
        return Err(Error::SizeMismatch {
            left: h.n(),
            right: g1.n(),
        });
    }
    if h.n() != params.n {
        return Err(Error::SizeMismatch {
            left: h.n(),
            right: params.n,
        });
    }
    if !is_connected(h) {
        return Err(Error::Disconnected);
    }
    let r0 = union_graphs(h, g1)?;
    let links = match params.edges {
        EdgesMode::RandomOnly => g1,
        EdgesMode::All => &r0,
    };

    let mut report = PipelineReport {
        count_floor: params.count_floor(),
        window: params.window(),
        ..Default::default()
    };
    let empty = ClusterFamily::empty(h.n());

    let frags = fragment(h, params.ell_int())?;
    report.fragments = frags.len();

    // S1
    let levels = match dyadic_levels(&frags, params) {
        Ok(l) => l,
        Err(Error::Domain(msg)) => {
            report.flag(Stage::Levels, msg);
            return Ok((empty, finish(report, &r0, None, params)));
        }
        Err(e) => return Err(e),
    };
    let owner = frags.owner_map();

    // S2
    let mut lines = Vec::new();
    for lvl in &levels {
        let mut lr = LevelReport {
            index: lvl.index,
            clusters: lvl.clusters.len(),
            mass: lvl.mass,
            threshold: lvl.threshold,
            active: lvl.active,
            rule: lvl.rule,
            linked: 0,
            target: 0,
            shortfall: false,
        };
        if lvl.active {
            let out = link_within_level(&lvl.clusters, lvl.rule, &frags, &owner, links);
            lr.linked = out.seq.len();
            lr.target = out.target;
            lr.shortfall = out.shortfall;
            if out.shortfall {
                report.flag(
                    Stage::Link,
                    format!(
                        "level {} linked {} of target {}",
                        lvl.index,
                        out.seq.len(),
                        out.target
                    ),
                );
            }
            lines.push(Line {
                level: lvl.index,
                seq: out.seq,
            });
        }
        report.levels.push(lr);
    }
    if lines.is_empty() {
        report.flag(Stage::Levels, "no level reaches its activity threshold");
        return Ok((empty, finish(report, &r0, None, params)));
    }

    // S3
    let cat = concatenate_levels(&lines, &frags, &owner, links);
    report.linked_mass = cat.linked_mass;
    report.line_mass = cat.kept_mass;
    report.seam_failures = cat.seam_failures;
    report.overlapping_blocks = cat.overlapping_blocks.clone();
    if cat.seam_failures > 0 {
        report.flag(
            Stage::Concat,
            format!("{} seam(s) without a joining edge", cat.seam_failures),
        );
    }
    let target_mass = params.coverage * params.n as f64;
    if (cat.kept_mass as f64) < target_mass {
        report.flag(
            Stage::Concat,
            format!("line covers {} < {target_mass:.1} vertices", cat.kept_mass),
        );
    }

    // S4
    let merged = merge_sequence(&cat.sequence, &frags, params.window().0)?;
    report.discarded = merged.discarded;
    let fam = merged.family;
    if (fam.len() as f64) < params.count_floor() {
        report.flag(
            Stage::Merge,
            format!(
                "{} groups below the floor {:.3}",
                fam.len(),
                params.count_floor()
            ),
        );
    }
    let report = finish(report, &r0, Some(&fam), params);
    Ok((fam, report))
}

fn finish(
    mut report: PipelineReport,
    r0: &Graph,
    fam: Option<&ClusterFamily>,
    params: &PipelineParams,
) -> PipelineReport {
    let empty = ClusterFamily::empty(r0.n());
    let fam = fam.unwrap_or(&empty);
    report.m = fam.len();
    report.min_size = fam.min_size();
    report.max_size = fam.max_size();
    report.minor_valid = fam.check_connected(r0).is_ok();
    match verify_contract(r0, fam, params) {
        Ok(()) => report.success = true,
        Err(e) => {
            report.success = false;
            report.fail_stage = Some(report.flags.first().map_or(Stage::Merge, |f| f.0));
            report.reason = Some(match report.flags.first() {
                Some((_, msg)) => msg.clone(),
                None => e.to_string(),
            });
        }
    }
    report
}

/// Contracts the groups of `fam` in `r ∪ g2`.
pub fn meta_minor(r: &Graph, fam: &ClusterFamily, g2: &Graph) -> Result<Graph> {
    contract_family(&union_graphs(r, g2)?, fam)
}

/// Contracts the groups of `fam` using only the second-round edges; the
/// result has every pair of groups joined independently.
pub fn random_meta_minor(fam: &ClusterFamily, g2: &Graph) -> Result<Graph> {
    contract_family(g2, fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_bounded_degree_tree, gen_path};
    use crate::random::{sample_gnp, Seed};

    #[test]
    fn strict_guards() {
        let e = EdgesMode::RandomOnly;
        assert!(PipelineParams::strict(1000, 0.003, 1, 8.0, 8.0, e).is_err());
        assert!(PipelineParams::strict(1000, 0.0, 1, 8.0, 8.0, e).is_err());
        assert!(PipelineParams::strict(1000, 0.001, 1, 7.0, 8.0, e).is_err());
        assert!(PipelineParams::strict(1000, 0.001, 1, 9.0, 8.0, e).is_err());
        // n²p/(4800·8) = 2e6/38400 ≈ 52.08
        let ok = PipelineParams::strict(1_000_000, 2e-6, 52, 8.0, 8.0, e).unwrap();
        assert!((ok.ell - 96.0 * 8.0 / 2.0).abs() < 1e-9);
        assert!(PipelineParams::strict(1_000_000, 2e-6, 53, 8.0, 8.0, e).is_err());
    }

    #[test]
    fn strict_window_matches_formula() {
        let p = PipelineParams::strict(1_000_000, 2e-6, 4, 8.0, 10.0, EdgesMode::All).unwrap();
        let np = 2.0;
        let (lo, hi) = p.window();
        assert!((lo - 96.0 * 10.0 * 4.0 / np).abs() < 1e-9);
        assert!((hi - 192.0 * 10.0 * 4.0 / np).abs() < 1e-9);
        assert!((p.count_floor() - 1e12 * 2e-6 / (9600.0 * 10.0 * 4.0)).abs() < 1e-9);
    }

    #[test]
    fn relaxed_knob_checks() {
        let k = RelaxedKnobs {
            window_mult: Some(2.0),
            ..Default::default()
        };
        let e = EdgesMode::RandomOnly;
        assert!(PipelineParams::relaxed(100, 0.01, 3, 8.0, 8.0, k, e).is_err());
        let k = RelaxedKnobs {
            ell: Some(0.5),
            ..Default::default()
        };
        assert!(PipelineParams::relaxed(100, 0.01, 3, 8.0, 8.0, k, e).is_err());
    }

    #[test]
    fn degenerate_fails_at_levels() {
        let h = gen_path(2);
        let params = PipelineParams::relaxed(
            2,
            0.1,
            1,
            8.0,
            8.0,
            RelaxedKnobs {
                ell: Some(1.0),
                ..Default::default()
            },
            EdgesMode::RandomOnly,
        )
        .unwrap();
        let (fam, rep) = build_partition(&h, &Graph::empty(2), &params).unwrap();
        assert!(fam.is_empty());
        assert!(!rep.success);
        assert_eq!(rep.fail_stage, Some(Stage::Levels));
    }

    #[test]
    fn relaxed_run_verifies() {
        let n = 20_000;
        let h = gen_bounded_degree_tree(n, 3, Seed(1)).unwrap();
        let g1 = sample_gnp(n, 1.0 / n as f64, Seed(2)).unwrap();
        let knobs = RelaxedKnobs {
            ell: Some(8.0),
            window_mult: Some(4.0),
            ..Default::default()
        };
        let params =
            PipelineParams::relaxed(n, 1.0 / n as f64, 3, 8.0, 8.0, knobs, EdgesMode::RandomOnly)
                .unwrap();
        let (fam, rep) = build_partition(&h, &g1, &params).unwrap();
        assert!(rep.minor_valid);
        assert!(rep.success, "{rep:?}");
        let r0 = union_graphs(&h, &g1).unwrap();
        verify_contract(&r0, &fam, &params).unwrap();
        assert_eq!(rep.m, fam.len());
    }

    #[test]
    fn meta_minor_examples() {
        let r = gen_path(4);
        let single = ClusterFamily::singletons(4);
        assert_eq!(meta_minor(&r, &single, &Graph::empty(4)).unwrap(), r);
        let fam = ClusterFamily::new(4, vec![vec![0].into(), vec![3].into()]).unwrap();
        let g2 = Graph::from_edges(4, [(0, 3)]).unwrap();
        assert_eq!(random_meta_minor(&fam, &g2).unwrap(), Graph::complete(2));
    }
}
