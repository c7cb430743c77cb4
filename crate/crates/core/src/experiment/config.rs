//! Experiment configuration: a TOML file with `[experiment]`, `[family]`,
//! `[pipeline]` and `[bounds]` sections.
//!
//! ```toml
//! [experiment]
//! seed = 7
//! trials = 20
//! n = [200000]
//! p = "1e-5"          # or "4/n", or "2*n^-1.5"
//! mode = "relaxed"    # or "strict"
//!
//! [family]
//! kind = "bounded-degree-random-tree"
//! delta = 3
//!
//! [pipeline]
//! ell = 8
//! window_mult = 4
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::partition::{EdgesMode, Mode, RelaxedKnobs};
use crate::random::Seed;

/// Edge probability as a function of `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PRule {
    Constant(f64),
    /// `a/n`
    OverN(f64),
    /// `a·n^(−b)`
    Power {
        a: f64,
        b: f64,
    },
}

impl PRule {
    pub fn eval(&self, n: usize) -> f64 {
        let nf = n as f64;
        match *self {
            PRule::Constant(p) => p,
            PRule::OverN(a) => a / nf,
            PRule::Power { a, b } => a * nf.powf(-b),
        }
    }
}

impl FromStr for PRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("cannot read p rule `{s}`"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let num = |x: &str| x.parse::<f64>().map_err(|_| bad());
        if let Some(a) = t.strip_suffix("/n") {
            return Ok(PRule::OverN(num(a)?));
        }
        if let Some((a, b)) = t.split_once("*n^") {
            return Ok(PRule::Power {
                a: num(a)?,
                b: -num(b)?,
            });
        }
        if let Some(b) = t.strip_prefix("n^") {
            return Ok(PRule::Power {
                a: 1.0,
                b: -num(b)?,
            });
        }
        Ok(PRule::Constant(num(&t)?))
    }
}

impl fmt::Display for PRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PRule::Constant(p) => write!(f, "{p}"),
            PRule::OverN(a) => write!(f, "{a}/n"),
            PRule::Power { a, b } => write!(f, "{a}*n^{}", -b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Path,
    Star,
    BoundedDegreeTree,
    Caterpillar,
    StarOfStars,
    PathWithTrees,
    PathBundle,
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => FamilyKind::Path,
            "star" => FamilyKind::Star,
            "bounded-degree-random-tree" | "tree" => FamilyKind::BoundedDegreeTree,
            "caterpillar-path" | "caterpillar" => FamilyKind::Caterpillar,
            "star-of-stars" => FamilyKind::StarOfStars,
            "path-with-trees" => FamilyKind::PathWithTrees,
            "path-bundle" => FamilyKind::PathBundle,
            _ => return Err(Error::Config(format!("unknown family `{s}`"))),
        })
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Path => "path",
            FamilyKind::Star => "star",
            FamilyKind::BoundedDegreeTree => "bounded-degree-random-tree",
            FamilyKind::Caterpillar => "caterpillar-path",
            FamilyKind::StarOfStars => "star-of-stars",
            FamilyKind::PathWithTrees => "path-with-trees",
            FamilyKind::PathBundle => "path-bundle",
        })
    }
}

fn default_mode() -> String {
    "relaxed".into()
}
fn default_edges() -> String {
    "random-only".into()
}
fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub seed: u64,
    pub trials: usize,
    pub n: Vec<usize>,
    pub p: String,
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default = "default_edges")]
    pub edges: String,
    /// Worker threads; 0 uses every core.
    #[serde(default)]
    pub threads: usize,
    /// Record wall-clock time per trial (off makes output byte-stable).
    #[serde(default = "yes")]
    pub timing: bool,
}

fn three() -> usize {
    3
}
fn eight() -> usize {
    8
}
fn twenty() -> f64 {
    20.0
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySection {
    pub kind: String,
    #[serde(default = "three")]
    pub delta: usize,
    #[serde(default = "eight")]
    pub k_paths: usize,
    /// Growth constant of the star-of-stars and path-with-trees families.
    #[serde(default = "twenty")]
    pub c: f64,
}

fn c_default() -> f64 {
    8.0
}
fn c_scale_default() -> f64 {
    RelaxedKnobs::default().c_scale
}
fn coverage_default() -> f64 {
    RelaxedKnobs::default().coverage
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineSection {
    #[serde(rename = "C", default = "c_default")]
    pub c_big: f64,
    #[serde(rename = "C_prime", default = "c_default")]
    pub c_prime: f64,
    pub ell: Option<f64>,
    pub window_mult: Option<f64>,
    #[serde(default = "c_scale_default")]
    pub c_scale: f64,
    #[serde(default = "coverage_default")]
    pub coverage: f64,
}

impl Default for PipelineSection {
    fn default() -> Self {
        PipelineSection {
            c_big: c_default(),
            c_prime: c_default(),
            ell: None,
            window_mult: None,
            c_scale: c_scale_default(),
            coverage: coverage_default(),
        }
    }
}

fn cap_default() -> usize {
    crate::params::DEFAULT_EXACT_CAP
}
fn effort_default() -> usize {
    crate::params::DEFAULT_EFFORT
}
fn one() -> f64 {
    1.0
}
fn four() -> f64 {
    4.0
}
fn c_small_default() -> f64 {
    1.2
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSection {
    #[serde(default = "cap_default")]
    pub exact_cap: usize,
    #[serde(default = "effort_default")]
    pub effort: usize,
    #[serde(default = "yes")]
    pub congestion: bool,
    /// Path length for the path-cover families instead of the derived one.
    pub k_override: Option<usize>,
    #[serde(default = "one")]
    pub r: f64,
    #[serde(default = "one")]
    pub r_h: f64,
    #[serde(default = "four")]
    pub c_h: f64,
    #[serde(default = "c_small_default")]
    pub c: f64,
}

impl Default for BoundsSection {
    fn default() -> Self {
        BoundsSection {
            exact_cap: cap_default(),
            effort: effort_default(),
            congestion: true,
            k_override: None,
            r: 1.0,
            r_h: 1.0,
            c_h: 4.0,
            c: c_small_default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentSection,
    pub family: FamilySection,
    #[serde(default)]
    pub pipeline: PipelineSection,
    #[serde(default)]
    pub bounds: BoundsSection,
}

/// A validated configuration with every string field parsed.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub config: ExperimentConfig,
    pub seed: Seed,
    pub p_rule: PRule,
    pub mode: Mode,
    pub edges: EdgesMode,
    pub family: FamilyKind,
}

impl ExperimentConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn knobs(&self) -> RelaxedKnobs {
        RelaxedKnobs {
            ell: self.pipeline.ell,
            window_mult: self.pipeline.window_mult,
            c_scale: self.pipeline.c_scale,
            coverage: self.pipeline.coverage,
        }
    }

    /// Checks the invariants (at least one trial, strictly increasing
    /// nonempty `n` grid) and parses the string fields.
    pub fn plan(&self) -> Result<Plan> {
        let e = &self.experiment;
        if e.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if e.n.is_empty() {
            return Err(Error::Config("the n grid is empty".into()));
        }
        if e.n.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(
                "the n grid must be strictly increasing".into(),
            ));
        }
        if e.n[0] == 0 {
            return Err(Error::Config("n must be positive".into()));
        }
        let p_rule: PRule = e.p.parse()?;
        for &n in &e.n {
            let p = p_rule.eval(n);
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("p rule gives {p} at n = {n}")));
            }
        }
        Ok(Plan {
            config: self.clone(),
            seed: Seed(e.seed),
            p_rule,
            mode: e.mode.parse()?,
            edges: e.edges.parse()?,
            family: self.family.kind.parse()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
[experiment]
seed = 3
trials = 2
n = [100, 200]
p = "4/n"

[family]
kind = "path-bundle"
k_paths = 8

[bounds]
k_override = 1
"#;

    #[test]
    fn parses_with_defaults() {
        let c = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        let plan = c.plan().unwrap();
        assert_eq!(plan.p_rule, PRule::OverN(4.0));
        assert_eq!(plan.mode, Mode::Relaxed);
        assert_eq!(plan.family, FamilyKind::PathBundle);
        assert_eq!(c.pipeline.c_big, 8.0);
        assert_eq!(c.bounds.k_override, Some(1));
        assert!(c.experiment.timing);
    }

    #[test]
    fn rejects_bad_configs() {
        let unknown = SAMPLE.replace("k_paths = 8", "k_paths = 8\nfoo = 1");
        assert!(ExperimentConfig::from_toml_str(&unknown).is_err());
        let c =
            ExperimentConfig::from_toml_str(&SAMPLE.replace("[100, 200]", "[200, 100]")).unwrap();
        assert!(c.plan().is_err());
        let c =
            ExperimentConfig::from_toml_str(&SAMPLE.replace("trials = 2", "trials = 0")).unwrap();
        assert!(c.plan().is_err());
        let c = ExperimentConfig::from_toml_str(&SAMPLE.replace("4/n", "200/n")).unwrap();
        assert!(c.plan().is_err());
    }

    #[test]
    fn p_rules() {
        assert_eq!("1e-5".parse::<PRule>().unwrap().eval(10), 1e-5);
        assert_eq!("4/n".parse::<PRule>().unwrap().eval(8), 0.5);
        let r: PRule = "2*n^-1.5".parse().unwrap();
        assert!((r.eval(100) - 2e-3).abs() < 1e-15);
        assert_eq!("n^-1".parse::<PRule>().unwrap().eval(4), 0.25);
        assert!("x/n".parse::<PRule>().is_err());
        for s in ["0.5/n", "3*n^-2", "0.01"] {
            let r: PRule = s.parse().unwrap();
            assert_eq!(r.to_string().parse::<PRule>().unwrap(), r);
        }
    }
}
