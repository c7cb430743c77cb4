use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use perturb_core::experiment::{
    fit_records, run_experiment, validate_example, write_csv, write_csv_to, Axis, Example,
    ExampleParams, ExperimentConfig, FamilyKind, Field, PRule,
};
use perturb_core::fragment::{check_fragment, fragment};
use perturb_core::generators::{
    gen_bounded_degree_tree, gen_caterpillar, gen_path, gen_path_bundle, gen_path_with_trees,
    gen_star, gen_star_of_stars,
};
use perturb_core::io::{read_edge_list, write_clusters, write_edge_list};
use perturb_core::params::{param_bounds, BoundsConfig, DEFAULT_EFFORT, DEFAULT_EXACT_CAP};
use perturb_core::partition::{build_partition, EdgesMode, Mode, PipelineParams, RelaxedKnobs};
use perturb_core::path_cover::{indep_pipeline, IndepConfig};
use perturb_core::random::{sample_gnp, sample_two_round};
use perturb_core::{Graph, Seed};

#[derive(Parser)]
#[command(
    name = "perturb-lab",
    version,
    about = "Randomly perturbed graph experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p) and print it as an edge list.
    Gnp {
        #[arg(long)]
        n: usize,
        /// Probability, or a rule such as `4/n` or `2*n^-1.5`.
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a connected graph into clusters of at least `ell` vertices.
    Fragment {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the cluster partition of H using a sampled first-round graph.
    Partition(PartitionArgs),
    /// Lower bounds on treewidth, treedepth, genus and Hadwiger number.
    Params {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Path-cover minor for a host with few low-degree vertices.
    Indep {
        #[command(flatten)]
        host: HostArgs,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Path length instead of the one derived from `np`.
        #[arg(long)]
        k_override: Option<usize>,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Run a configured experiment and write one CSV row per trial.
    Experiment(ExperimentArgs),
    /// Frequency check of a sharpness construction.
    ValidateExample(ValidateArgs),
}

#[derive(Args)]
struct HostArgs {
    /// Edge-list file for the base graph.
    #[arg(long, conflicts_with = "family")]
    host: Option<PathBuf>,
    /// Generate the base graph instead (needs --n).
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 3)]
    delta: usize,
    #[arg(long, default_value_t = 8)]
    k_paths: usize,
    #[arg(long, default_value_t = 20.0)]
    c: f64,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    exact_cap: usize,
    #[arg(long, default_value_t = DEFAULT_EFFORT)]
    effort: usize,
    #[arg(long = "bounds-seed", default_value_t = 0)]
    bounds_seed: u64,
    /// Skip the shortest-path congestion treewidth bound.
    #[arg(long)]
    no_congestion: bool,
}

impl BoundsArgs {
    fn config(&self) -> BoundsConfig {
        BoundsConfig {
            exact_cap: self.exact_cap,
            effort: self.effort,
            seed: Seed(self.bounds_seed),
            congestion: !self.no_congestion,
        }
    }
}

#[derive(Args)]
struct PartitionArgs {
    #[command(flatten)]
    host: HostArgs,
    #[arg(long)]
    p: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "relaxed")]
    mode: String,
    #[arg(long, default_value = "random-only")]
    edges: String,
    #[arg(long = "C", default_value_t = 8.0)]
    c_big: f64,
    #[arg(long = "C-prime", default_value_t = 8.0)]
    c_prime: f64,
    #[arg(long)]
    ell: Option<f64>,
    #[arg(long)]
    window_mult: Option<f64>,
    #[arg(long)]
    c_scale: Option<f64>,
    #[arg(long)]
    coverage: Option<f64>,
    /// Write the clusters here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// CSV destination (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated, strictly increasing sizes.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    k_override: Option<usize>,
    /// Write 0 in the elapsed_ms column so output is byte-stable.
    #[arg(long)]
    no_timing: bool,
    /// Print log-log slopes of this field against n²p (e.g. hadwiger_lb).
    #[arg(long)]
    fit: Vec<String>,
}

#[derive(Args)]
struct ValidateArgs {
    /// 1, 2, 3, 4 or forest-lemma.
    #[arg(long)]
    which: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: String,
    #[arg(long, default_value_t = 10)]
    delta: usize,
    #[arg(long, default_value_t = 20.0)]
    c: f64,
    #[arg(long)]
    x: Option<usize>,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exit with status 2 when the all-events rate falls below this.
    #[arg(long, default_value_t = 0.9)]
    threshold: f64,
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    /// A check failed (exit code 2).
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn read_graph(path: &Path) -> Result<Graph> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(read_edge_list(BufReader::new(f))?)
}

fn prob(rule: &str, n: usize) -> Result<f64> {
    Ok(rule.parse::<PRule>()?.eval(n))
}

fn host_graph(a: &HostArgs, p_rule: &str, seed: Seed) -> Result<Graph> {
    if let Some(path) = &a.host {
        return read_graph(path);
    }
    let (Some(kind), Some(n)) = (&a.family, a.n) else {
        bail!("give --host FILE, or --family KIND with --n");
    };
    let p = prob(p_rule, n)?;
    Ok(match kind.parse::<FamilyKind>()? {
        FamilyKind::Path => gen_path(n),
        FamilyKind::Star => gen_star(n),
        FamilyKind::BoundedDegreeTree => gen_bounded_degree_tree(n, a.delta, seed)?,
        FamilyKind::Caterpillar => gen_caterpillar(n, a.delta)?.0,
        FamilyKind::StarOfStars => gen_star_of_stars(n, p, a.c)?.graph,
        FamilyKind::PathWithTrees => gen_path_with_trees(n, a.delta, p, a.c)?.graph,
        FamilyKind::PathBundle => gen_path_bundle(n, a.k_paths)?,
    })
}

fn run(cmd: Command) -> Result<Status> {
    match cmd {
        Command::Gnp { n, p, seed, out } => {
            let g = sample_gnp(n, prob(&p, n)?, Seed(seed))?;
            let mut w = output(out.as_deref())?;
            write_edge_list(&g, &mut w)?;
            w.flush()?;
            Ok(Status::Ok)
        }
        Command::Fragment { graph, ell, out } => {
            let g = read_graph(&graph)?;
            let fam = fragment(&g, ell)?;
            let checked = check_fragment(&g, &fam, ell);
            let mut w = output(out.as_deref())?;
            write_clusters(&fam, &mut w)?;
            w.flush()?;
            eprintln!(
                "clusters={} min_size={} max_size={}",
                fam.len(),
                fam.min_size(),
                fam.max_size()
            );
            if let Err(e) = checked {
                eprintln!("check failed: {e}");
                return Ok(Status::Failed);
            }
            Ok(Status::Ok)
        }
        Command::Partition(a) => partition(a),
        Command::Params { graph, bounds } => {
            let g = read_graph(&graph)?;
            let b = param_bounds(&g, &bounds.config())?;
            println!("n,edges,tw_lb,tw_method,td_lb,td_method,genus_lb,genus_method,hadwiger_lb,hadwiger_method");
            println!(
                "{},{},{},{},{},{},{},{},{},{}",
                g.n(),
                g.num_edges(),
                b.tw_lb,
                b.tw_method,
                b.td_lb,
                b.td_method,
                b.genus_lb,
                b.genus_method,
                b.hadwiger_lb,
                b.hadwiger_method
            );
            Ok(Status::Ok)
        }
        Command::Indep {
            host,
            p,
            seed,
            k_override,
            bounds,
        } => {
            let seed = Seed(seed);
            let h = host_graph(&host, &p, seed.derive(1))?;
            let pv = prob(&p, h.n())?;
            let g = sample_gnp(h.n(), pv, seed.derive(2))?;
            let out = indep_pipeline(
                &h,
                &g,
                &IndepConfig {
                    p: pv,
                    k_override,
                    bounds: bounds.config(),
                },
            )?;
            let b = &out.bounds;
            println!(
                "k={} paths={} alpha={}",
                out.k,
                out.cover.paths.len(),
                out.cover.alpha
            );
            println!("q={:.6} mq_ok={}", out.q, out.mq_ok);
            println!(
                "tw_lb={} ({}) td_lb={} ({}) genus_lb={} ({}) hadwiger_lb={} ({})",
                b.tw_lb,
                b.tw_method,
                b.td_lb,
                b.td_method,
                b.genus_lb,
                b.genus_method,
                b.hadwiger_lb,
                b.hadwiger_method
            );
            Ok(Status::Ok)
        }
        Command::Experiment(a) => experiment(a),
        Command::ValidateExample(a) => validate(a),
    }
}

fn partition(a: PartitionArgs) -> Result<Status> {
    let seed = Seed(a.seed);
    let h = host_graph(&a.host, &a.p, seed.derive(1))?;
    let n = h.n();
    let p = prob(&a.p, n)?;
    let delta = h.max_degree().max(1);
    let edges: EdgesMode = a.edges.parse()?;
    let params = match a.mode.parse::<Mode>()? {
        Mode::Strict => PipelineParams::strict(n, p, delta, a.c_big, a.c_prime, edges)?,
        Mode::Relaxed => {
            let d = RelaxedKnobs::default();
            let knobs = RelaxedKnobs {
                ell: a.ell,
                window_mult: a.window_mult,
                c_scale: a.c_scale.unwrap_or(d.c_scale),
                coverage: a.coverage.unwrap_or(d.coverage),
            };
            PipelineParams::relaxed(n, p, delta, a.c_big, a.c_prime, knobs, edges)?
        }
    };
    let (g1, _) = sample_two_round(n, p, seed.derive(2))?;
    let (fam, report) = build_partition(&h, &g1, &params)?;
    let (lo, hi) = report.window;
    println!(
        "success={} m={} min_size={} max_size={} window=[{lo:.1}, {hi:.1}] floor={:.2}",
        report.success, report.m, report.min_size, report.max_size, report.count_floor
    );
    for (stage, msg) in &report.flags {
        println!("{stage}: {msg}");
    }
    if let Some(out) = a.out {
        let mut w = output(Some(&out))?;
        write_clusters(&fam, &mut w)?;
        w.flush()?;
    }
    if !report.success {
        if let (Some(stage), Some(reason)) = (report.fail_stage, &report.reason) {
            eprintln!("failed at {stage}: {reason}");
        }
        return Ok(Status::Failed);
    }
    Ok(Status::Ok)
}

fn experiment(a: ExperimentArgs) -> Result<Status> {
    let mut cfg = ExperimentConfig::load(&a.config)?;
    let e = &mut cfg.experiment;
    if let Some(s) = a.seed {
        e.seed = s;
    }
    if let Some(t) = a.trials {
        e.trials = t;
    }
    if let Some(n) = a.n {
        e.n = n;
    }
    if let Some(p) = a.p {
        e.p = p;
    }
    if let Some(m) = a.mode {
        e.mode = m;
    }
    if let Some(t) = a.threads {
        e.threads = t;
    }
    if a.no_timing {
        e.timing = false;
    }
    if a.k_override.is_some() {
        cfg.bounds.k_override = a.k_override;
    }
    let fields: Vec<Field> = a.fit.iter().map(|f| f.parse()).collect::<Result<_, _>>()?;
    let plan = cfg.plan()?;
    let records = run_experiment(&plan)?;
    match &a.out {
        Some(path) => write_csv(&records, path)?,
        None => write_csv_to(&records, io::stdout().lock())?,
    }
    for (name, f) in a.fit.iter().zip(fields) {
        let fit = fit_records(&records, f, Axis::N2p)?;
        eprintln!(
            "{name}: slope {:.4} +/- {:.4} vs n^2 p",
            fit.slope, fit.stderr
        );
    }
    Ok(Status::Ok)
}

fn validate(a: ValidateArgs) -> Result<Status> {
    let which: Example = a.which.parse()?;
    let params = ExampleParams {
        n: a.n,
        p: prob(&a.p, a.n)?,
        delta: a.delta,
        c: a.c,
        x: a.x,
    };
    let rep = validate_example(which, &params, a.trials, Seed(a.seed))?;
    for w in &rep.warnings {
        eprintln!("warning: {w}");
    }
    println!("example {} over {} trials", rep.example, rep.trials);
    for ev in &rep.events {
        println!("  {}: {}/{}", ev.name, ev.passes, rep.trials);
    }
    println!("  all: {}/{}", rep.all_passes, rep.trials);
    if let (Some(max), Some(mean)) = (rep.max_component, rep.mean_max_component) {
        print!("  largest component: max {max}, mean {mean:.1}");
        match rep.reference_size {
            Some(r) => println!(", x ln(n/x) = {r:.1}"),
            None => println!(),
        }
    }
    if let Some(tw) = rep.tw_witness {
        println!("  treewidth at most {tw} when the events hold");
    }
    Ok(if rep.all_rate() >= a.threshold {
        Status::Ok
    } else {
        Status::Failed
    })
}
