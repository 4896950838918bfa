//! `detcut`: balanced cuts, vertex expansion, vertex connectivity and
//! sparsification on edge-list graph files, with JSON reports.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use detcut::balcut::{BalCutOutcome, BalancedCut};
use detcut::cutmatching::{approx_vertex_expansion, round_cap, ExpansionOutcome};
use detcut::expanders::gabber_galil;
use detcut::generators::{cycle_power, expander_dumbbell, planted, random_regular, rng};
use detcut::graph::{format_edge_list, format_weighted_edge_list, load_graph, Loaded};
use detcut::jtree::{jtree_balanced_cut, pipeline_cut, JTreeRoutine, Profile};
use detcut::oracle::{brute_conductance, brute_kappa, brute_min_vertex_cut, brute_sparsity, brute_vertex_expansion, OracleBudget};
use detcut::pagerank::{most_balanced_edge_cut_weighted, DenseCut};
use detcut::sparsify::{default_branching, recursive_sparsify, KappaApproxReport};
use detcut::vconn::{main_vc_with, VcConfig};
use detcut::{Error, Graph, WeightedGraph};

/// Seed base for generated benchmark instances.
const BENCH_SEED: u64 = 0x5eed_c0de;
const BENCH_RNG: &str = "ChaCha8";

#[derive(Parser)]
#[command(name = "detcut", version, about = "Deterministic balanced cuts, vertex expansion and vertex connectivity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Pagerank,
    Jtree,
    Recursive,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Pagerank => "pagerank",
            Algo::Jtree => "jtree",
            Algo::Recursive => "recursive",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Measure {
    Conductance,
    Sparsity,
    Vexp,
    Kappa,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Dumbbell,
    Planted,
    Expander,
    CyclePower,
    RandomRegular,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Dumbbell => "dumbbell",
            Family::Planted => "planted",
            Family::Expander => "expander",
            Family::CyclePower => "cycle-power",
            Family::RandomRegular => "random-regular",
        }
    }

    // The j-tree profiles scale phi by stretch times degree before calling
    // the inner routine, so expanders need a smaller phi to certify.
    fn default_phi(self) -> f64 {
        match self {
            Family::Expander => 1e-4,
            _ => 0.01,
        }
    }

    fn generate(self, n: usize) -> Result<Graph, Error> {
        let seed = BENCH_SEED ^ n as u64;
        Ok(match self {
            Family::Dumbbell => expander_dumbbell(n),
            Family::Planted => planted(n, 0.5, 2, &mut rng(seed)),
            Family::Expander => gabber_galil(n)?.simple(),
            Family::CyclePower => cycle_power(n, 3),
            Family::RandomRegular => random_regular(n, 4, &mut rng(seed)),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Balanced low-conductance cut or a conductance certificate.
    Cut {
        #[arg(long, value_enum, default_value = "pagerank")]
        algo: Algo,
        #[arg(long)]
        phi: f64,
        /// Size reduction for the j-tree algorithm (default: the profile's choice).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        allow_loops: bool,
        /// Include wall-clock seconds in the report.
        #[arg(long)]
        timing: bool,
        graph: PathBuf,
    },
    /// Vertex-expansion certificate or a sparse separation triple.
    Vexp {
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        timing: bool,
        graph: PathBuf,
    },
    /// Decide k-vertex-connectivity.
    Vc {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.25)]
        a: f64,
        /// Vertex count at or below which the exact routine is used.
        #[arg(long)]
        base_case: Option<usize>,
        #[arg(long)]
        timing: bool,
        graph: PathBuf,
    },
    /// Cut sparsifier with its measured approximation factor.
    Sparsify {
        #[arg(long)]
        b: Option<usize>,
        /// Write the sparsifier as a weighted edge list.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Read the input as a weighted edge list.
        #[arg(long)]
        weighted: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        graph: PathBuf,
    },
    /// Exhaustive reference values for small graphs.
    Oracle {
        #[arg(long, value_enum)]
        measure: Measure,
        graph: PathBuf,
    },
    /// Benchmark CSV over a generated family.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', num_args = 0.., value_parser = parse_size)]
        sizes: Vec<Option<usize>>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "pagerank,jtree,recursive")]
        algos: Vec<Algo>,
        /// Defaults to 1e-4 for the expander family and 0.01 otherwise.
        #[arg(long)]
        phi: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave the seconds column empty so output is reproducible.
        #[arg(long)]
        no_timing: bool,
    },
}

fn fingerprint(g: &Graph) -> Value {
    let digest = Sha256::digest(format_edge_list(g).as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    json!({"n": g.n(), "m": g.m(), "sha256": hex})
}

fn load_unweighted(path: &Path, allow_loops: bool) -> Result<Graph, Error> {
    match load_graph(path, false, allow_loops)? {
        Loaded::Unweighted(g) => Ok(g),
        Loaded::Weighted(w) => Ok(w.skeleton()),
    }
}

fn check_phi(phi: f64) -> Result<(), Error> {
    if !(phi > 0.0 && phi <= 1.0) {
        return Err(Error::Domain(format!("phi must lie in (0,1], got {phi}")));
    }
    Ok(())
}

/// Metrics of a cut, recomputed from the graph.
fn cut_metrics(g: &Graph, s: &[usize]) -> Result<Value, Error> {
    let c = detcut::Cut::new(g, s)?;
    Ok(json!({
        "conductance": c.conductance(),
        "sparsity": c.sparsity(),
        "boundary": c.boundary,
        "volume": c.volume_in,
        "volume_complement": c.volume_out,
        "balance": c.volume_in.min(c.volume_out) as f64 / g.total_volume() as f64,
    }))
}

struct CutResult {
    outcome: BalCutOutcome,
    bound: f64,
    extra: Value,
}

fn run_cut(g: &Graph, algo: Algo, phi: f64, k: Option<usize>) -> Result<CutResult, Error> {
    let m = g.m() as f64;
    match algo {
        Algo::Pagerank => {
            let r = most_balanced_edge_cut_weighted(&WeightedGraph::from_graph(g), phi)?;
            let tried: Vec<Value> = r.candidates.iter().map(|(a, c)| json!({"alpha": a, "candidates": c})).collect();
            Ok(CutResult {
                outcome: r.outcome,
                bound: DenseCut.conductance_bound(phi, m),
                extra: json!({"spectral_lower_bound": r.spectral_lower_bound, "teleport": tried}),
            })
        }
        Algo::Jtree | Algo::Recursive => {
            let run = match (algo, k) {
                (Algo::Jtree, Some(k)) => jtree_balanced_cut(g, phi, k, &DenseCut)?,
                (Algo::Jtree, None) => pipeline_cut(g, phi, Profile::OneShot)?,
                (_, Some(k)) => jtree_balanced_cut(g, phi, k, &detcut::jtree::SparsifiedDense)?,
                (_, None) => pipeline_cut(g, phi, Profile::Recursive)?,
            };
            let bound = if run.fell_back {
                DenseCut.conductance_bound(phi, m)
            } else {
                JTreeRoutine { inner: &DenseCut }.conductance_bound(phi, m)
            };
            Ok(CutResult {
                outcome: run.outcome,
                bound,
                extra: json!({
                    "trees": run.trees,
                    "core_budget": run.core_budget,
                    "mean_stretch": run.mean_stretch,
                    "tree_phi": run.tree_phi,
                    "fell_back": run.fell_back,
                }),
            })
        }
    }
}

fn cut_report(g: &Graph, algo: Algo, phi: f64, k: Option<usize>) -> Result<Value, Error> {
    let r = run_cut(g, algo, phi, k)?;
    let mut report = json!({
        "algorithm": algo.name(),
        "params": {"phi": phi, "k": k},
        "graph": fingerprint(g),
        "bound": r.bound,
        "trace": r.extra,
    });
    match r.outcome {
        BalCutOutcome::Certified(c) => {
            report["outcome"] = json!("certificate");
            report["certificate"] = json!({
                "lower_bound": c.lower_bound,
                "basis": c.basis.name(),
                "unconditional": c.basis.is_unconditional(),
            });
        }
        BalCutOutcome::Cut(s) => {
            let metrics = cut_metrics(g, &s)?;
            report["outcome"] = json!("cut");
            report["achieved_ratio"] = json!(metrics["conductance"].as_f64().unwrap_or(f64::NAN) / phi);
            report["metrics"] = metrics;
            report["cut"] = json!(s);
        }
    }
    Ok(report)
}

fn vexp_report(g: &Graph, eta: f64) -> Result<Value, Error> {
    let r = approx_vertex_expansion(g, eta, &DenseCut)?;
    let history: Vec<&str> = r.state.history.iter().map(|t| t.name()).collect();
    let mut report = json!({
        "algorithm": "cut-matching",
        "params": {"eta": eta, "congestion": r.state.congestion_budget},
        "graph": fingerprint(g),
        "rounds": r.state.round,
        "round_cap": round_cap(g.n()),
        "history": history,
        "embedding_congestion": r.state.congestion(),
    });
    match r.outcome {
        ExpansionOutcome::Certified { eta_cert } => {
            report["certified"] = json!(true);
            report["outcome"] = json!("certificate");
            report["eta_cert"] = json!(eta_cert);
        }
        ExpansionOutcome::Triple(t) => {
            let t = detcut::graph::validate_triple(g, &t.l, &t.s, &t.r)?;
            report["certified"] = json!(false);
            report["outcome"] = json!("triple");
            report["h"] = json!(t.expansion());
            report["triple"] = json!({"l": t.l, "s": t.s, "r": t.r});
        }
    }
    Ok(report)
}

fn vc_report(g: &Graph, k: usize, a: f64, base_case: Option<usize>) -> Result<Value, Error> {
    let cfg = VcConfig { base_case, ..VcConfig::new(a) };
    let r = main_vc_with(g, k, &cfg)?;
    let s = &r.stats;
    let mut report = json!({
        "algorithm": "main-vc",
        "params": {"k": k, "a": a, "base_case": cfg.threshold(k)},
        "graph": fingerprint(g),
        "k_connected": r.cut.is_none(),
        "stats": {
            "base_cases": s.base_cases,
            "high_expansion": s.high_expansion,
            "low_expansion": s.low_expansion,
            "unbalanced_triples": s.unbalanced_triples,
            "local_searches": s.local_searches,
            "max_depth": s.max_depth,
        },
    });
    if let Some(c) = r.cut {
        report["outcome"] = json!("cut");
        report["verified"] = json!(g.is_vertex_cut(&c) && c.len() < k);
        report["cut"] = json!(c);
    } else {
        report["outcome"] = json!("certificate");
    }
    Ok(report)
}

fn sparsify_report(path: &Path, weighted: bool, b: Option<usize>, out: Option<&Path>, seed: u64) -> Result<Value, Error> {
    let g = match load_graph(path, weighted, false)? {
        Loaded::Unweighted(g) => WeightedGraph::from_graph(&g),
        Loaded::Weighted(w) => w,
    };
    let b = b.unwrap_or_else(|| default_branching(g.n()));
    let h = recursive_sparsify(&g, b, &DenseCut)?;
    let k = KappaApproxReport::measure(&g, &h, &OracleBudget::default(), seed)?;
    if let Some(out) = out {
        std::fs::write(out, format_weighted_edge_list(&h))?;
    }
    Ok(json!({
        "algorithm": "recursive-sparsify",
        "params": {"b": b, "seed": seed},
        "graph": fingerprint(&g.skeleton()),
        "input_edges": g.m(),
        "output_edges": h.m(),
        "connected": h.n() < 2 || h.is_connected(),
        "kappa_measured": k.kappa_measured,
        "exhaustive": k.exhaustive,
        "out": out.map(|p| p.display().to_string()),
    }))
}

fn oracle_report(g: &Graph, measure: Measure) -> Result<Value, Error> {
    let budget = OracleBudget::default();
    let (name, value) = match measure {
        Measure::Conductance => {
            let (v, s) = brute_conductance(g, &budget)?;
            ("conductance", json!({"value": v, "witness": s}))
        }
        Measure::Sparsity => {
            let (v, s) = brute_sparsity(g, &budget)?;
            ("sparsity", json!({"value": v, "witness": s}))
        }
        Measure::Vexp => match brute_vertex_expansion(g, &budget)? {
            Some((h, t)) => ("vertex-expansion", json!({"value": h, "witness": {"l": t.l, "s": t.s, "r": t.r}})),
            None => ("vertex-expansion", json!({"value": null, "witness": null})),
        },
        Measure::Kappa => {
            let kappa = brute_kappa(g, &budget)?;
            ("kappa", json!({"value": kappa, "witness": brute_min_vertex_cut(g, &budget)?}))
        }
    };
    Ok(json!({"algorithm": "oracle", "measure": name, "graph": fingerprint(g), "result": value}))
}

const BENCH_HEADER: &str = "family,n,m,algo,phi,outcome,achieved_phi,bound,balance,seconds";

/// An empty item stands for no size, so `--sizes ""` is an empty list.
fn parse_size(s: &str) -> Result<Option<usize>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|e| format!("{e}"))
}

fn bench_rows(family: Family, sizes: &[usize], algos: &[Algo], phi: f64, timing: bool) -> Result<Vec<String>, Error> {
    let mut rows = Vec::new();
    for &n in sizes {
        let g = family.generate(n)?;
        for &algo in algos {
            let start = Instant::now();
            let r = run_cut(&g, algo, phi, None)?;
            let seconds = start.elapsed().as_secs_f64();
            let (outcome, achieved, balance) = match &r.outcome {
                BalCutOutcome::Certified(_) => ("certificate", String::new(), String::new()),
                BalCutOutcome::Cut(s) => {
                    let c = detcut::Cut::new(&g, s)?;
                    let bal = c.volume_in.min(c.volume_out) as f64 / g.total_volume() as f64;
                    ("cut", format!("{}", c.conductance()), format!("{bal}"))
                }
            };
            let secs = if timing { format!("{seconds:.6}") } else { String::new() };
            rows.push(format!(
                "{},{},{},{},{},{},{},{},{},{}",
                family.name(),
                g.n(),
                g.m(),
                algo.name(),
                phi,
                outcome,
                achieved,
                r.bound,
                balance,
                secs
            ));
        }
    }
    Ok(rows)
}

fn execute(command: Command) -> Result<String, Error> {
    let timed = |timing: bool, start: Instant, mut v: Value| {
        if timing {
            v["seconds"] = json!(start.elapsed().as_secs_f64());
        }
        v
    };
    let start = Instant::now();
    let report = match command {
        Command::Cut { algo, phi, k, allow_loops, timing, graph } => {
            check_phi(phi)?;
            let g = load_unweighted(&graph, allow_loops)?;
            timed(timing, start, cut_report(&g, algo, phi, k)?)
        }
        Command::Vexp { eta, timing, graph } => {
            let g = load_unweighted(&graph, false)?;
            timed(timing, start, vexp_report(&g, eta)?)
        }
        Command::Vc { k, a, base_case, timing, graph } => {
            let g = load_unweighted(&graph, false)?;
            timed(timing, start, vc_report(&g, k, a, base_case)?)
        }
        Command::Sparsify { b, out, weighted, seed, graph } => sparsify_report(&graph, weighted, b, out.as_deref(), seed)?,
        Command::Oracle { measure, graph } => oracle_report(&load_unweighted(&graph, false)?, measure)?,
        Command::Bench { family, sizes, algos, phi, out, no_timing } => {
            let phi = phi.unwrap_or(family.default_phi());
            check_phi(phi)?;
            let sizes: Vec<usize> = sizes.into_iter().flatten().collect();
            let rows = bench_rows(family, &sizes, &algos, phi, !no_timing)?;
            let mut csv = String::from(BENCH_HEADER);
            csv.push('\n');
            for r in &rows {
                csv.push_str(r);
                csv.push('\n');
            }
            match out {
                None => return Ok(csv),
                Some(path) => {
                    std::fs::write(&path, csv)?;
                    json!({
                        "family": family.name(),
                        "rows": rows.len(),
                        "rng": BENCH_RNG,
                        "seed_base": BENCH_SEED,
                        "out": path.display().to_string(),
                    })
                }
            }
        }
    };
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
    text.push('\n');
    Ok(text)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget(_) | Error::RoundCap { .. } => 3,
        Error::Parse(_) | Error::Domain(_) | Error::Io(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
